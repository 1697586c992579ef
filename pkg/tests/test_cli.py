import csv

import numpy as np
import pytest

from minmax_apsp import NEG_INF, POS_INF, minmax_product, oracle_apsp, target_minmax_naive
from minmax_apsp.cli import (
    InvalidInputError,
    ParseError,
    RunConfig,
    _default_threads,
    format_edge_list,
    format_matrix,
    gen_random_graph,
    main,
    parse_edge_list,
    parse_matrix,
    run,
)

INF = POS_INF

CHAIN_TEXT = "# three-vertex chain\n3 2\n0\t1\t1\n1\t2\t1\n"


# ---------------------------------------------------------------------------
# generator


def test_gen_density_zero_is_edgeless():
    assert gen_random_graph(5, 0.0, 1).edges == ()


def test_gen_density_one_is_complete():
    g = gen_random_graph(3, 1.0, 1)
    assert len(g.edges) == 6
    assert len({(u, v) for u, v, _ in g.edges}) == 6


def test_gen_is_deterministic():
    a = gen_random_graph(17, 0.4, 123456789)
    b = gen_random_graph(17, 0.4, 123456789)
    assert a == b
    assert format_edge_list(a) == format_edge_list(b)
    assert gen_random_graph(17, 0.4, 987654321) != a


def test_gen_rejects_bad_arguments():
    with pytest.raises(ValueError):
        gen_random_graph(0, 0.5, 1)
    with pytest.raises(ValueError):
        gen_random_graph(3, 1.5, 1)


# ---------------------------------------------------------------------------
# file formats


def test_edge_list_round_trip():
    g = gen_random_graph(9, 0.5, 7)
    assert parse_edge_list(format_edge_list(g)) == g
    assert parse_edge_list(format_edge_list(parse_edge_list(format_edge_list(g)))) == g


def test_edge_list_accepts_comments_and_blanks():
    g = parse_edge_list("# header\n\n2 1\n# edge below\n0\t1\t-1\n\n")
    assert g.edges == ((0, 1, -1),)


def test_edge_list_parse_errors():
    with pytest.raises(ParseError):
        parse_edge_list("")
    with pytest.raises(ParseError):
        parse_edge_list("2\n")
    with pytest.raises(ParseError):
        parse_edge_list("2 1\n0 1\n")
    with pytest.raises(ParseError):
        parse_edge_list("2 2\n0 1 1\n")  # too few edges
    with pytest.raises(ParseError):
        parse_edge_list("2 1\n0 1 1\n1 0 1\n")  # too many


def test_edge_list_invalid_input_names_line():
    with pytest.raises(InvalidInputError, match="line 3"):
        parse_edge_list("2 2\n0 1 1\n1 0 2\n")
    with pytest.raises(InvalidInputError, match="line 2"):
        parse_edge_list("2 1\n0 5 1\n")


def test_matrix_round_trip_with_infinities():
    m = np.array([[0, 5, INF], [NEG_INF, -3, 1]], dtype=float)
    assert np.array_equal(parse_matrix(format_matrix(m)), m)


def test_matrix_parse_accepts_bare_inf():
    m = parse_matrix("1 2\ninf -inf\n")
    assert m.tolist() == [[INF, NEG_INF]]


def test_matrix_parse_errors():
    with pytest.raises(ParseError):
        parse_matrix("1 2\n3\n")
    with pytest.raises(ParseError):
        parse_matrix("1 1\nx\n")
    with pytest.raises(ParseError):
        parse_matrix("2 1\n3\n")


# ---------------------------------------------------------------------------
# commands through run()/main()


def write_chain(tmp_path):
    path = tmp_path / "chain.txt"
    path.write_text(CHAIN_TEXT, encoding="utf-8")
    return path


def test_solve_writes_distances(tmp_path):
    inp = write_chain(tmp_path)
    out = tmp_path / "star.txt"
    assert main(["solve", str(inp), "-o", str(out)]) == 0
    text = out.read_text(encoding="utf-8")
    assert text.splitlines()[1] == "0 1 2"
    assert np.array_equal(
        parse_matrix(text), [[0, 1, 2], [INF, 0, 1], [INF, INF, 0]]
    )


def test_solve_algorithms_agree_byte_for_byte(tmp_path):
    gen = tmp_path / "g.txt"
    assert main(["gen", "-n", "24", "--density", "0.4", "--seed", "5", "-o", str(gen)]) == 0
    out_red = tmp_path / "red.txt"
    out_ora = tmp_path / "ora.txt"
    assert main(["solve", str(gen), "-o", str(out_red)]) == 0
    assert main(["solve", str(gen), "--algorithm", "oracle", "-o", str(out_ora)]) == 0
    assert out_red.read_bytes() == out_ora.read_bytes()


def test_solve_with_verification_mode(tmp_path):
    gen = tmp_path / "g.txt"
    main(["gen", "-n", "10", "--density", "0.4", "--seed", "3", "-o", str(gen)])
    out = tmp_path / "star.txt"
    assert main(["solve", str(gen), "-o", str(out), "--verify"]) == 0
    a_star = parse_matrix(out.read_text(encoding="utf-8"))
    from minmax_apsp import adjacency_from_graph

    assert np.array_equal(a_star, oracle_apsp(adjacency_from_graph(parse_edge_list(gen.read_text(encoding="utf-8")))))


def test_solve_is_deterministic_across_runs(tmp_path):
    gen = tmp_path / "g.txt"
    main(["gen", "-n", "16", "--density", "0.5", "--seed", "9", "-o", str(gen)])
    out1 = tmp_path / "a.txt"
    out2 = tmp_path / "b.txt"
    assert main(["solve", str(gen), "-o", str(out1), "--threads", "1"]) == 0
    assert main(["solve", str(gen), "-o", str(out2), "--threads", "4"]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_gen_output_is_byte_identical(tmp_path):
    out1 = tmp_path / "a.txt"
    out2 = tmp_path / "b.txt"
    args = ["gen", "-n", "12", "--density", "0.3", "--seed", "77"]
    assert main(args + ["-o", str(out1)]) == 0
    assert main(args + ["-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_verify_ok_on_seeded_graphs(tmp_path, capsys):
    for seed in range(6):
        gen = tmp_path / f"g{seed}.txt"
        assert main(["gen", "-n", "32", "--density", "0.35", "--seed", str(seed), "-o", str(gen)]) == 0
        assert main(["verify", str(gen)]) == 0
    assert "engine matches oracle" in capsys.readouterr().out


def test_solve_invalid_weight_exits_3(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1\n0 1 2\n", encoding="utf-8")
    assert main(["solve", str(bad), "-o", str(tmp_path / "x.txt")]) == 3
    assert "line 2" in capsys.readouterr().err


def test_solve_malformed_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("2 1\n0 1\n", encoding="utf-8")
    assert main(["solve", str(bad), "-o", str(tmp_path / "x.txt")]) == 2
    assert "error" in capsys.readouterr().err


def test_missing_input_file_exits_2(tmp_path):
    assert main(["solve", str(tmp_path / "nope.txt"), "-o", str(tmp_path / "x.txt")]) == 2


def test_unknown_flags_exit_2(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["solve", "--nonsense"])
    assert info.value.code == 2


def test_product_minmax(tmp_path):
    a = np.array([[1, 3], [2, 0]], dtype=float)
    b = np.array([[2, NEG_INF], [INF, 1]], dtype=float)
    pa, pb, out = tmp_path / "a.txt", tmp_path / "b.txt", tmp_path / "c.txt"
    pa.write_text(format_matrix(a), encoding="utf-8")
    pb.write_text(format_matrix(b), encoding="utf-8")
    assert main(["product", "--kernel", "minmax", str(pa), str(pb), "-o", str(out)]) == 0
    assert np.array_equal(parse_matrix(out.read_text(encoding="utf-8")), minmax_product(a, b))


def test_product_target_kernels_agree(tmp_path):
    rng = np.random.default_rng(3)
    n = 12
    a = rng.integers(-6, 7, size=(n, n)).astype(float)
    b = np.where(rng.random((n, n)) < 0.5, NEG_INF, INF)
    target = np.where(
        np.isfinite(minmax_product(a, b)),
        minmax_product(a, b) - rng.integers(0, 2, size=(n, n)),
        minmax_product(a, b),
    )
    paths = {}
    for name, m in (("a", a), ("b", b), ("t", target)):
        paths[name] = tmp_path / f"{name}.txt"
        paths[name].write_text(format_matrix(m), encoding="utf-8")
    out_naive = tmp_path / "naive.txt"
    out_rest = tmp_path / "rest.txt"
    base = ["product", str(paths["a"]), str(paths["b"]), str(paths["t"])]
    assert main(base + ["--kernel", "tminmax-naive", "-o", str(out_naive)]) == 0
    assert main(base + ["--kernel", "tminmax-restricted", "-o", str(out_rest), "--verify"]) == 0
    assert out_naive.read_bytes() == out_rest.read_bytes()
    want = target_minmax_naive(a, b, target).to_bool().astype(float)
    assert np.array_equal(parse_matrix(out_naive.read_text(encoding="utf-8")), want)


def test_product_missing_target_exits_2(tmp_path, capsys):
    pa = tmp_path / "a.txt"
    pa.write_text(format_matrix(np.zeros((2, 2))), encoding="utf-8")
    code = main(["product", "--kernel", "tminmax-naive", str(pa), str(pa), "-o", str(tmp_path / "o.txt")])
    assert code == 2


def test_product_restricted_rejects_finite_b(tmp_path):
    pa = tmp_path / "a.txt"
    pa.write_text(format_matrix(np.zeros((2, 2))), encoding="utf-8")
    code = main(
        ["product", "--kernel", "tminmax-restricted", str(pa), str(pa), str(pa), "-o", str(tmp_path / "o.txt")]
    )
    assert code == 3


def test_product_restricted_verify_rejects_bad_target(tmp_path):
    a = np.array([[1.0]])
    b = np.array([[NEG_INF]])
    target = np.array([[7.0]])  # exceeds the min-max product
    pa, pb, pt = tmp_path / "a.txt", tmp_path / "b.txt", tmp_path / "t.txt"
    pa.write_text(format_matrix(a), encoding="utf-8")
    pb.write_text(format_matrix(b), encoding="utf-8")
    pt.write_text(format_matrix(target), encoding="utf-8")
    base = ["product", "--kernel", "tminmax-restricted", str(pa), str(pb), str(pt)]
    assert main(base + ["-o", str(tmp_path / "o1.txt")]) == 0  # unchecked without --verify
    assert main(base + ["-o", str(tmp_path / "o2.txt"), "--verify"]) == 3


def test_bench_writes_consistent_checksums(tmp_path):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--sizes", "24,40", "--repeats", "1", "-o", str(out)]) == 0
    with open(out, encoding="utf-8") as handle:
        rows = list(csv.DictReader(handle))
    assert {r["kernel"] for r in rows} == {"minmax", "tminmax-naive", "tminmax-restricted"}
    for n in ("24", "40"):
        sums = {r["kernel"]: r["checksum"] for r in rows if r["n"] == n}
        assert sums["tminmax-naive"] == sums["tminmax-restricted"]
        assert all(int(r["wall_ns"]) > 0 for r in rows)


def test_verify_runconfig_roundtrip(tmp_path):
    gen = tmp_path / "g.txt"
    main(["gen", "-n", "6", "--density", "0.5", "--seed", "2", "-o", str(gen)])
    config = RunConfig(command="verify", input=str(gen))
    assert run(config) == 0


def test_verify_mismatch_report(tmp_path, capsys, monkeypatch):
    # the engine never actually disagrees with the oracle, so corrupt it to
    # exercise the exit-1 report contract
    import minmax_apsp.cli as cli_mod

    def corrupted(a, t=0.5, **kwargs):
        out = oracle_apsp(a)
        out[0, 1] = 12345.0  # no 8-vertex distance can be this
        return out

    monkeypatch.setattr(cli_mod, "solve_apsp", corrupted)
    gen = tmp_path / "g.txt"
    main(["gen", "-n", "8", "--density", "0.9", "--seed", "4", "-o", str(gen)])
    assert main(["verify", str(gen)]) == 1
    report = capsys.readouterr().out
    assert "MISMATCH" in report
    assert "(0, 1)" in report and "got" in report and "want" in report


def test_default_threads_env(monkeypatch):
    monkeypatch.setenv("APSP_THREADS", "7")
    assert _default_threads() == 7
    monkeypatch.setenv("APSP_THREADS", "junk")
    assert _default_threads() == 1
    monkeypatch.delenv("APSP_THREADS")
    assert _default_threads() == 1
