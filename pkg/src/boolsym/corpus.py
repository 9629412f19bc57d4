"""Bundled corpus of published high-nonlinearity Boolean functions.

Each entry records a published truth table together with its claimed
figures of merit and the symmetry groups it must (and, where relevant,
must not) be invariant under.  verify_entry() recomputes everything from
the hex string, so the corpus doubles as a transcription checksum and as
the regression fixture for the whole analysis stack.

The permutation-class entries state their invariance with the variable
labeling running in the opposite direction from this library's index
convention; their representative permutations are stored here conjugated
by the reflection, which expresses the identical symmetry in local terms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boolfn import (
    FunctionReport,
    TruthTable,
    analyze,
    decode_hex,
)
from .orbits import FoldError, fold, orbit_partition, parse_group

_HEX_9_DSBF_I40 = (
    "68B7EF2DA03B0D3EA00DB6A96DD99AEAFDB9C842B6D5DC8C4526CE0DD29020DB"
    "B75FE3314568344E73688FF0CB2482E065231869E1AA4583765CC491F8A8DB12"
)

_HEX_9_DSBF_I32 = (
    "125425D30A398F36508C06817BEE122E250D973314F976AED58A3EA9120DA4FE"
    "0E4D4575C42DD0426365EBA7FC5F45BE9B2F336981B5E1863618F49474F6FE00"
)

_HEX_9_RSBF_I56 = (
    "3740B6A118A1E19642A85E2B7E2F3C3CB65FA0D95EC9DB1EA92BDB3666185AE0"
    "087F5FE6E0757106A12FC918754C40E8A1BCCB7A714032A8961456E066E8A801"
)

_HEX_9_PERM_I48 = (
    "7B8F94BAD364DAC9931906F9465FF33E921E13D7552DAFD684757B662FDA3C68"
    "FA8D94B3C3659B5FCC46FD1518050F97A1E02039AAF74337134F30AB5B41D9DE"
)

_HEX_9_PERMTAU_I64 = (
    "0331786B34D878855663A2E961F1CB4F779EBBF6881ABB24AC033E6C2B32E049"
    "3D0891DB1888EA5E6F910310311532FC68D5F2A4B5BE6445E41F64299F0CC99A"
)

_HEX_11_DSBF_I200 = (
    "68C1F052AA14260999DD0365487844C6C397A7B6114A787724957BC46471F12D"
    "F05F873ECC6E8A29034265887BD17A2A483583367B8FF1312C347E12FA1708F3"
    "AA1433AF952B5BE9B5F02CA891985C92114A640C2D6380C57B9BB3027E991D8D"
    "34C45B66D00E5B7D6ACF80EEAB021A430CE54E707AAD520DAB9D472F4081FF1F"
    "89CC06215F1B8CAA973658CF27DAADD3CF36AA0118B0DDC08716D3D526E4C70D"
    "065371D97C2054E458A2390BD550E5736ADAC2DF8B0A10492BACC3C317B381F7"
    "1A21F52076CB3C3DB60144F836DF2AB32DDDE0EAC051FCBD8C8F10491299751F"
    "41F0E96761AC6F053F888DE7234945F79C9B92B3703B19BF6545C557BBBF57FF"
)

_HEX_13_DSBF_I208 = (
    "177E7EF97EFCFF937FF8EBA0FAFBC71A7EFBEAD0EC8B8815EA99FADEA12A568D"
    "7EE8EA8BF889B215FDB1848F80950677EDC883D3AE9DB2ED9D031888277CD4F7"
    "7FEDE881ECDC948AFF90D0968B0C0676EFE3CE028524D4FAC114C666116C2A6B"
    "F8E2A195815AF71A89FCD3A29B48BDE3C7F6155F139090904C2B2AA1F321AA3F"
    "7EEEF8B2E881D107ECA1E3B5C665D088EAAE9354A710C37C81CB04E4156C3A28"
    "ECAFEC0AB5ED504C85361D75B325AA88F4560730A4386C7C13537CF04CCD299B"
    "FA85B81D9C129772D143368CFE2A43C88096AEB4B35E8809D3DE64959BE7A90E"
    "A12BBF7D077227FA034FC601D340931535A159CF4C88CC17BB0B4D13C8990BAE"
    "7EFCE8ACEAC18B0DE881C517E253407FF8F4C917EC5E9F32A12C3826F700C081"
    "F889C9F8934B2770DC7B5710F44F2EF09146A5CA1530BD3107663CA14BCD0C81"
    "F9A18DABB9F411C88A26ECF6364474B484321F7D47E33B779B5E58679CCD85D5"
    "FA35626C042E4E419C244A902CF12EF5420E660B6EA0EE0570A0A4B64D86979E"
    "FFCDD1728BC516A786F10348976A7F09B212350A0A78D5F1BFA85CD8350BA194"
    "C015D72899F98F208E1B73E9C0950093B24AE7B96C65933782CAFC7BCCD715BC"
    "9D0208CA8AAA7FE2147A2E49192BFBCD145A74FAF0790003E75B7451930B1736"
    "1E76880372D3A1AB70F18590E1F5177A8E8B449F61B2075AF08597D6519ECCE9"
    "7EEDEEF5FC90CDB4ED8CA10785CE10E3E881C147F523072FB81D274B71403EEF"
    "FB81AE60F4C6122EB9A032EC96AA5A09C8171CF41ED05879BE7F5444A101D107"
    "EAC481D3A197ABC0825E349E192A7A40A3A07BCA367F5300EE3424AE5DECAB15"
    "C347647CD962E09806265E01DEA75B12117F3C3C1BA1D85771DBA0A751B58512"
    "EE82891381B78D8FCE97AE741242F081C19C593CEDF4EB2C5A3874753A619B21"
    "D1315E5802AE6AE6247FB95F5ECB6B3FC78A22A962842D2F82A1A0A3C026B276"
    "FBDC1B632D1878F144700CFD70EC711687F05D3025D9870548B5AB5708EDAF76"
    "700800F86C2951DB6CECCD01BDED51766E01CD11CD349F7C21A7943CC37ED6A9"
    "EBAFE4B6B2133A49819BF1334739D86BD128EA42504A60C1876E6CCD6FEA11D3"
    "8A1D17180E6650C810D86FD0A622FA179BAED88422E1E3D45F6651CFDD03D734"
    "A0151733A72E48C196D6BE92C4EF4951D5EC028A2F5FE997B00182330101824E"
    "DE5934CDAC2FCAD63CF43D33871F0B3EC00CA1DDAAB17BDEA1B5B67E13669EE1"
    "93A6454915D5B5C9D088C8893AABB85D07742AC84CBC20C752C2099EFADBF1F6"
    "077532896E64AB9DFA003F974105110AED6B238E6E753716821F05DE176E5A69"
    "52B97F79C081414F3E08A60BC816CDDE3F41AA17C0779350B912AF76073E7AC9"
    "C5FD819B602186BE79078F5C543E36C9BF158126D33EE6697712D6A9F4E1E997"
)


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    n: int
    hex: str
    nl: int
    absolute_indicator: int
    degree: int
    invariant_under: tuple[str, ...]
    not_invariant_under: tuple[str, ...] = ()
    walsh_zero_count: int | None = None
    source: str = ""

    def table(self) -> TruthTable:
        return decode_hex(self.hex, self.n)


ENTRIES: tuple[CorpusEntry, ...] = (
    CorpusEntry(
        id="9v-3dsbf-i40",
        n=9,
        hex=_HEX_9_DSBF_I40,
        nl=242,
        absolute_indicator=40,
        degree=7,
        invariant_under=("k-dsbf:3",),
        walsh_zero_count=0,
        source="3-dihedral search",
    ),
    CorpusEntry(
        id="9v-3dsbf-i32",
        n=9,
        hex=_HEX_9_DSBF_I32,
        nl=242,
        absolute_indicator=32,
        degree=7,
        invariant_under=("k-dsbf:3",),
        walsh_zero_count=0,
        source="3-dihedral search",
    ),
    CorpusEntry(
        id="9v-3rsbf-i56",
        n=9,
        hex=_HEX_9_RSBF_I56,
        nl=242,
        absolute_indicator=56,
        degree=7,
        invariant_under=("k-rsbf:3",),
        not_invariant_under=("k-dsbf:3",),
        walsh_zero_count=0,
        source="3-rotation search seeded from a 3-dihedral solution",
    ),
    CorpusEntry(
        id="9v-perm-i48",
        n=9,
        hex=_HEX_9_PERM_I48,
        nl=242,
        absolute_indicator=48,
        degree=7,
        invariant_under=("perm:(5,0,1,2,3,4,7,6,8)",),
        walsh_zero_count=0,
        source="permutation-class search, 104-orbit class",
    ),
    CorpusEntry(
        id="9v-permtau-i64",
        n=9,
        hex=_HEX_9_PERMTAU_I64,
        nl=242,
        absolute_indicator=64,
        degree=7,
        invariant_under=("perm:(8,7,3,0,1,6,2,4,5)+tau",),
        walsh_zero_count=0,
        source="reflection-restricted permutation-class search, 74 orbits",
    ),
    CorpusEntry(
        id="11v-dsbf-i200",
        n=11,
        hex=_HEX_11_DSBF_I200,
        nl=994,
        absolute_indicator=200,
        degree=9,
        invariant_under=("dsbf",),
        source="11-variable dihedral search",
    ),
    CorpusEntry(
        id="13v-dsbf-i208",
        n=13,
        hex=_HEX_13_DSBF_I208,
        nl=4036,
        absolute_indicator=208,
        degree=10,
        invariant_under=("dsbf+perm:(0,2,4,6,8,10,12,1,3,5,7,9,11)",),
        source="13-variable reduced dihedral search, 74 orbits",
    ),
)


def get(entry_id: str) -> CorpusEntry:
    for entry in ENTRIES:
        if entry.id == entry_id:
            return entry
    raise KeyError(entry_id)


def verify_entry(entry: CorpusEntry) -> tuple[bool, list[str], FunctionReport]:
    """Recompute every claim for one entry; returns (ok, complaints, report)."""
    complaints: list[str] = []
    tt = entry.table()
    report = analyze(tt)
    if report.nonlinearity != entry.nl:
        complaints.append(f"nl {report.nonlinearity} != {entry.nl}")
    if report.absolute_indicator != entry.absolute_indicator:
        complaints.append(
            f"absolute indicator {report.absolute_indicator} "
            f"!= {entry.absolute_indicator}"
        )
    if report.degree != entry.degree:
        complaints.append(f"degree {report.degree} != {entry.degree}")
    if (
        entry.walsh_zero_count is not None
        and report.walsh_zero_count != entry.walsh_zero_count
    ):
        complaints.append(
            f"walsh zero count {report.walsh_zero_count} "
            f"!= {entry.walsh_zero_count}"
        )
    for text in entry.invariant_under:
        partition = orbit_partition(parse_group(text, entry.n))
        try:
            fold(tt, partition)
        except FoldError as exc:
            complaints.append(f"not invariant under {text}: {exc}")
    for text in entry.not_invariant_under:
        partition = orbit_partition(parse_group(text, entry.n))
        try:
            fold(tt, partition)
        except FoldError:
            pass
        else:
            complaints.append(f"unexpectedly invariant under {text}")
    return not complaints, complaints, report


def verify_all() -> list[tuple[CorpusEntry, bool, list[str], FunctionReport]]:
    return [(entry, *verify_entry(entry)) for entry in ENTRIES]
