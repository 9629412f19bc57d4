import numpy as np
import pytest

from boolsym import (
    TruthTable,
    absolute_indicator,
    add_linear,
    analyze,
    anf,
    autocorrelation,
    bent_inner_product,
    complement,
    decode_hex,
    degree,
    direct_sum,
    encode_hex,
    fold,
    nonlinearity,
    orbit_partition,
    parse_group,
    walsh_transform,
    walsh_zeros,
)
from boolsym.boolfn import LSB_FIRST, MSB_FIRST, anf_to_table
from boolsym.corpus import ENTRIES, get

from oracles import (
    naive_autocorr,
    naive_degree,
    naive_mobius,
    naive_nonlinearity,
    naive_walsh,
    random_table,
)


def tt(n, bits):
    return TruthTable(n, np.array(bits, dtype=np.uint8))


class TestHexCodec:
    def test_nibble_expansion(self):
        assert decode_hex("F0", 3).bits.tolist() == [1, 1, 1, 1, 0, 0, 0, 0]

    def test_all_zero(self):
        assert decode_hex("00", 3).bits.tolist() == [0] * 8

    def test_whitespace_and_case_ignored(self):
        entry = get("9v-3dsbf-i40")
        wrapped = "\n".join(entry.hex[i : i + 32].lower() for i in range(0, 128, 32))
        assert decode_hex(wrapped, 9) == entry.table()

    def test_wrong_length(self):
        with pytest.raises(ValueError, match="expected 128 hex digits, got 4"):
            decode_hex("BEEF", 9)

    def test_non_hex_character(self):
        with pytest.raises(ValueError, match="non-hex"):
            decode_hex("FG", 3)

    def test_round_trip_random(self):
        rng = np.random.default_rng(11)
        for n in (2, 3, 5, 9):
            table = TruthTable(n, random_table(rng, n))
            assert decode_hex(encode_hex(table), n) == table

    def test_round_trip_corpus(self):
        for entry in ENTRIES:
            assert encode_hex(entry.table()) == entry.hex.upper()

    def test_trivial_encode(self):
        assert encode_hex(tt(3, [1, 1, 1, 1, 0, 0, 0, 0])) == "F0"
        assert encode_hex(decode_hex("0" * 128, 9)) == "0" * 128

    def test_canonical_order_is_the_unique_admissible_one(self):
        # the msb-first nibble order reproduces the published figures *and*
        # the 3-dihedral invariance; the mirrored order keeps the spectrum
        # (it relabels inputs affinely) but breaks the symmetry
        entry = get("9v-3dsbf-i40")
        partition = orbit_partition(parse_group("k-dsbf:3", 9))

        canonical = decode_hex(entry.hex, 9, MSB_FIRST)
        report = analyze(canonical)
        assert (report.nonlinearity, report.absolute_indicator, report.degree) == (
            242,
            40,
            7,
        )
        fold(canonical, partition)  # must not raise

        mirrored = decode_hex(entry.hex, 9, LSB_FIRST)
        with pytest.raises(ValueError):
            fold(mirrored, partition)


class TestWalsh:
    def test_all_zero_function(self):
        ws = walsh_transform(tt(3, [0] * 8))
        assert ws.values[0] == 8
        assert not ws.values[1:].any()

    def test_single_variable_function(self):
        # f(x) = x_0 correlates perfectly with <x, 01>: the defining sum
        # gives +4 there and 0 elsewhere except the unbalanced origin
        bits = np.array([0, 1, 0, 1], dtype=np.uint8)
        ws = walsh_transform(tt(2, bits))
        assert ws.values.tolist() == naive_walsh(bits).tolist()
        assert ws.values[1] == 4

    def test_matches_defining_sum(self):
        rng = np.random.default_rng(5)
        for n in range(1, 7):
            for _ in range(8):
                bits = random_table(rng, n)
                got = walsh_transform(TruthTable(n, bits)).values
                assert got.tolist() == naive_walsh(bits).tolist()

    def test_parseval(self):
        rng = np.random.default_rng(7)
        for n in range(1, 11):
            bits = random_table(rng, n)
            values = walsh_transform(TruthTable(n, bits)).values
            assert int((values.astype(object) ** 2).sum()) == 1 << (2 * n)

    def test_corpus_peak(self):
        ws = walsh_transform(get("9v-3dsbf-i40").table())
        assert int(np.max(np.abs(ws.values))) == (1 << 9) - 2 * 242 == 28

    def test_nonlinearity(self):
        assert nonlinearity(walsh_transform(tt(2, [0, 1, 0, 1]))) == 0
        assert nonlinearity(walsh_transform(TruthTable(9, np.zeros(512, np.uint8)))) == 0
        rng = np.random.default_rng(13)
        for n in (2, 3, 4):
            bits = random_table(rng, n)
            assert nonlinearity(walsh_transform(TruthTable(n, bits))) == (
                naive_nonlinearity(bits)
            )

    def test_walsh_zeros(self):
        assert walsh_zeros(walsh_transform(tt(2, [0, 1, 0, 1]))) == [2, 3]
        for entry in ENTRIES:
            if entry.n == 9:
                assert walsh_zeros(walsh_transform(entry.table())) == []

    def test_linear_shift_property(self):
        # XORing <x,u> onto f permutes the spectrum: W'(w) = W(w ^ u)
        rng = np.random.default_rng(17)
        for _ in range(10):
            n = int(rng.integers(2, 7))
            bits = random_table(rng, n)
            u = int(rng.integers(0, 1 << n))
            base = walsh_transform(TruthTable(n, bits)).values
            shifted = walsh_transform(add_linear(TruthTable(n, bits), u)).values
            x = np.arange(1 << n)
            assert shifted.tolist() == base[x ^ u].tolist()


class TestAutocorrelation:
    def test_origin_value(self):
        rng = np.random.default_rng(19)
        for n in (1, 3, 6):
            bits = random_table(rng, n)
            assert autocorrelation(TruthTable(n, bits)).values[0] == 1 << n

    def test_matches_defining_sum(self):
        rng = np.random.default_rng(23)
        for n in range(1, 9):
            bits = random_table(rng, n)
            got = autocorrelation(TruthTable(n, bits)).values
            assert got.tolist() == naive_autocorr(bits).tolist()

    def test_bent_function_is_flat(self):
        ac = autocorrelation(bent_inner_product(4))
        assert absolute_indicator(ac) == 0

    def test_corpus_indicators(self):
        assert absolute_indicator(autocorrelation(get("9v-3rsbf-i56").table())) == 56
        assert absolute_indicator(autocorrelation(get("9v-perm-i48").table())) == 48
        assert absolute_indicator(autocorrelation(get("9v-permtau-i64").table())) == 64

    def test_divisibility(self):
        rng = np.random.default_rng(29)
        for n in (2, 5, 8):
            values = autocorrelation(TruthTable(n, random_table(rng, n))).values
            assert not (values % 4).any()


class TestAnf:
    def test_single_monomial(self):
        a = anf(tt(2, [0, 0, 0, 1]))
        assert a.coeffs.tolist() == [0, 0, 0, 1]
        assert degree(a) == 2

    def test_matches_subset_parity(self):
        rng = np.random.default_rng(31)
        for n in range(1, 7):
            bits = random_table(rng, n)
            assert anf(TruthTable(n, bits)).coeffs.tolist() == (
                naive_mobius(bits).tolist()
            )

    def test_involution(self):
        rng = np.random.default_rng(37)
        for n in (1, 4, 8):
            table = TruthTable(n, random_table(rng, n))
            assert anf_to_table(anf(table)) == table

    def test_degree_conventions(self):
        assert degree(anf(TruthTable(5, np.zeros(32, np.uint8)))) == 0
        assert degree(anf(TruthTable(5, np.ones(32, np.uint8)))) == 0
        rng = np.random.default_rng(41)
        for n in (2, 3, 4):
            bits = random_table(rng, n)
            assert degree(anf(TruthTable(n, bits))) == naive_degree(bits)

    def test_corpus_degrees(self):
        for entry in ENTRIES:
            assert degree(anf(entry.table())) == entry.degree


class TestAffineInvariance:
    def test_add_linear_identity(self):
        table = get("9v-3dsbf-i32").table()
        assert add_linear(table, 0) == table

    def test_add_linear_preserves_figures(self):
        table = get("9v-3dsbf-i40").table()
        rng = np.random.default_rng(43)
        for u in rng.integers(1, 512, size=4):
            report = analyze(add_linear(table, int(u)))
            assert report.nonlinearity == 242
            assert report.absolute_indicator == 40

    def test_complement_preserves_figures(self):
        rng = np.random.default_rng(47)
        table = TruthTable(6, random_table(rng, 6))
        before = analyze(table)
        after = analyze(complement(table))
        assert before.nonlinearity == after.nonlinearity
        assert before.absolute_indicator == after.absolute_indicator

    def test_out_of_range_mask(self):
        with pytest.raises(ValueError):
            add_linear(tt(2, [0, 0, 0, 1]), 4)


class TestDirectSum:
    def test_spectrum_is_a_product(self):
        # W_h(u << f.n | x-mask) = W_f * W_g pointwise for h = f (+) g
        rng = np.random.default_rng(53)
        for _ in range(6):
            fn = int(rng.integers(1, 5))
            gn = int(rng.integers(1, 5))
            fbits = random_table(rng, fn)
            gbits = random_table(rng, gn)
            h = direct_sum(TruthTable(fn, fbits), TruthTable(gn, gbits))
            wf = naive_walsh(fbits)
            wg = naive_walsh(gbits)
            wh = walsh_transform(h).values
            for v in range(1 << gn):
                for u in range(1 << fn):
                    assert wh[(v << fn) | u] == wf[u] * wg[v]

    def test_nl_doubles_with_trivial_extension(self):
        rng = np.random.default_rng(59)
        for n in (2, 3, 4):
            bits = random_table(rng, n)
            h = direct_sum(TruthTable(n, bits), TruthTable(1, np.zeros(2, np.uint8)))
            assert nonlinearity(walsh_transform(h)) == 2 * naive_nonlinearity(bits)

    def test_bent_concatenation_values(self):
        table = get("9v-3dsbf-i40").table()
        eleven = direct_sum(table, bent_inner_product(2))
        thirteen = direct_sum(table, bent_inner_product(4))
        assert nonlinearity(walsh_transform(eleven)) == 996
        assert nonlinearity(walsh_transform(thirteen)) == 4040

    def test_variable_cap(self):
        nine = get("9v-3dsbf-i40").table()
        with pytest.raises(ValueError, match="18"):
            direct_sum(nine, nine)


class TestAnalyze:
    def test_all_zero_report(self):
        report = analyze(TruthTable(9, np.zeros(512, np.uint8)))
        assert (report.nonlinearity, report.absolute_indicator) == (0, 512)
        assert (report.degree, report.weight, report.balanced) == (0, 0, False)

    def test_balance_consistency(self):
        rng = np.random.default_rng(61)
        for _ in range(20):
            n = int(rng.integers(1, 9))
            bits = random_table(rng, n)
            report = analyze(TruthTable(n, bits))
            ws = walsh_transform(TruthTable(n, bits))
            assert report.balanced == (report.weight == 1 << (n - 1))
            assert report.balanced == (ws.values[0] == 0)

    def test_corpus_reports(self):
        report = analyze(get("9v-3dsbf-i40").table())
        assert (report.nonlinearity, report.absolute_indicator, report.degree) == (
            242,
            40,
            7,
        )
        assert report.balanced is False
        assert report.walsh_zero_count == 0
        report13 = analyze(get("13v-dsbf-i208").table())
        assert (report13.nonlinearity, report13.absolute_indicator) == (4036, 208)
        assert report13.degree == 10


class TestTruthTable:
    def test_length_validation(self):
        with pytest.raises(ValueError):
            TruthTable(3, np.zeros(7, np.uint8))

    def test_entry_validation(self):
        with pytest.raises(ValueError):
            TruthTable(2, np.array([0, 1, 2, 0], dtype=np.uint8))

    def test_immutability(self):
        table = tt(2, [0, 1, 1, 0])
        with pytest.raises(ValueError):
            table.bits[0] = 1

    def test_variable_cap(self):
        with pytest.raises(ValueError):
            TruthTable(17, np.zeros(1 << 17, np.uint8))
