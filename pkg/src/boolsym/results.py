"""Append-only line-oriented store for search results.

One self-contained JSON object per line, keys sorted, no volatile fields:
identical campaigns produce byte-identical record streams.  Every record
carries enough to re-derive its own figures of merit, which revalidate()
exploits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .boolfn import analyze, decode_hex, encode_hex
from .search import SearchConfig, SearchResult

_FIELDS = ("n", "group", "hex", "nl", "absolute_indicator", "degree",
           "seed", "run", "iteration")


@dataclass(frozen=True)
class ResultRecord:
    n: int
    group: str
    hex: str
    nl: int
    absolute_indicator: int
    degree: int
    seed: int
    run: int
    iteration: int

    def to_line(self) -> str:
        return json.dumps(
            {name: getattr(self, name) for name in _FIELDS},
            sort_keys=True,
            separators=(",", ":"),
        )


def record_from_result(result: SearchResult, cfg: SearchConfig) -> ResultRecord:
    group_name = cfg.group.name or "+".join(str(g) for g in cfg.group.generators)
    return ResultRecord(
        n=result.best_function.n,
        group=group_name,
        hex=encode_hex(result.best_function),
        nl=result.report.nonlinearity,
        absolute_indicator=result.report.absolute_indicator,
        degree=result.report.degree,
        seed=cfg.rng_seed,
        run=result.run_index,
        iteration=result.iteration_found,
    )


def append_records(path: str | Path, records: list[ResultRecord]) -> None:
    with open(path, "a", encoding="utf-8") as handle:
        for record in records:
            handle.write(record.to_line() + "\n")


def read_records(path: str | Path) -> list[ResultRecord]:
    records = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, 1):
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
                records.append(ResultRecord(**{k: data[k] for k in _FIELDS}))
            except (json.JSONDecodeError, KeyError) as exc:
                raise ValueError(f"{path}:{lineno}: malformed record: {exc}") from None
    return records


def revalidate(path: str | Path) -> list[tuple[int, ResultRecord, str]]:
    """Recompute every stored record's report; returns (line, record, what
    drifted) for each mismatch."""
    problems = []
    for index, record in enumerate(read_records(path), 1):
        report = analyze(decode_hex(record.hex, record.n))
        checks = (
            ("nl", record.nl, report.nonlinearity),
            ("absolute_indicator", record.absolute_indicator,
             report.absolute_indicator),
            ("degree", record.degree, report.degree),
        )
        for name, stored, fresh in checks:
            if stored != fresh:
                problems.append(
                    (index, record, f"{name}: stored {stored}, recomputed {fresh}")
                )
    return problems
