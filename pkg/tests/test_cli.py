import planarflow.cli as cli
from planarflow import parse_flow, parse_instance

SINGLE_EDGE = "plem 2 1\nrot 0 0\nrot 1 1\nedge 0 0 1 9 0\nsrc 0\nsnk 1\n"


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_solve_verify_pipeline(tmp_path, capsys):
    plem = tmp_path / "inst.plem"
    code, _, _ = run(["gen", "--kind", "grid", "--n", "49", "--seed", "5",
                      "--cap-max", "20", "--sources", "3",
                      "-o", str(plem)], capsys)
    assert code == 0
    pflo = tmp_path / "flow.pflo"
    code, _, _ = run(["solve", str(plem), "-o", str(pflo)], capsys)
    assert code == 0
    code, out, _ = run(["verify", str(plem), "--flow", str(pflo)], capsys)
    assert code == 0
    assert "FAIL" not in out


def test_solve_single_edge_prints_value(tmp_path, capsys):
    path = tmp_path / "edge.plem"
    path.write_text(SINGLE_EDGE)
    code, out, _ = run(["solve", str(path)], capsys)
    assert code == 0
    assert parse_flow(out).value == 9


def test_solve_sequential_on_fig1(tmp_path, capsys):
    code, out, _ = run(["fig1"], capsys)
    assert code == 0
    path = tmp_path / "fig1.plem"
    path.write_text(out)
    code, out, _ = run(["solve", str(path), "--algorithm", "sequential"], capsys)
    assert code == 0
    assert parse_flow(out).value == 3


def test_verify_cross_checks_solvers(tmp_path, capsys):
    path = tmp_path / "edge.plem"
    path.write_text(SINGLE_EDGE)
    code, out, _ = run(["verify", str(path)], capsys)
    assert code == 0
    assert "PASS sequential-matches-oracle" in out
    assert "PASS recursive-matches-oracle" in out


def test_verify_rejects_tampered_flow(tmp_path, capsys):
    plem = tmp_path / "inst.plem"
    run(["gen", "--kind", "grid", "--n", "25", "--seed", "1",
         "--cap-max", "9", "--sources", "2", "-o", str(plem)], capsys)
    pflo = tmp_path / "flow.pflo"
    run(["solve", str(plem), "-o", str(pflo)], capsys)
    dump = parse_flow(pflo.read_text())
    inst = parse_instance(plem.read_text())
    victim = next(d for d in range(inst.graph.dart_count)
                  if inst.graph.head(d) not in inst.sinks
                  and inst.graph.tail(d) not in inst.sources)
    dump.dart_flow[victim] = dump.dart_flow.get(victim, 0) + 1
    lines = [f"flow {d} {f}" for d, f in sorted(dump.dart_flow.items())]
    pflo.write_text("\n".join(lines) + f"\nvalue {dump.value}\n")
    code, out, _ = run(["verify", str(plem), "--flow", str(pflo)], capsys)
    assert code == 1
    assert "FAIL flow-valid" in out


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.plem"
    bad.write_text("not a plem file\n")
    code, _, err = run(["solve", str(bad)], capsys)
    assert code == 2
    assert "parse error" in err


def test_gen_deterministic(tmp_path, capsys):
    a = tmp_path / "a.plem"
    b = tmp_path / "b.plem"
    run(["gen", "--kind", "triangulation", "--n", "30", "--seed", "7",
         "-o", str(a)], capsys)
    run(["gen", "--kind", "triangulation", "--n", "30", "--seed", "7",
         "-o", str(b)], capsys)
    assert a.read_text() == b.read_text()


def test_env_seed_fallback(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("PLANARFLOW_SEED", "7")
    a = tmp_path / "a.plem"
    run(["gen", "--kind", "grid", "--n", "16", "-o", str(a)], capsys)
    b = tmp_path / "b.plem"
    run(["gen", "--kind", "grid", "--n", "16", "--seed", "7", "-o", str(b)],
        capsys)
    assert a.read_text() == b.read_text()


def test_bench_single_size_reports_na(capsys):
    code, out, _ = run(["bench", "--sizes", "100", "--seeds", "0",
                        "--cap-max", "5", "--sources", "2"], capsys)
    assert code == 0
    assert "exponent n/a" in out


def test_bench_values_deterministic(capsys):
    argv = ["bench", "--sizes", "100,400", "--seeds", "3",
            "--cap-max", "5", "--sources", "2"]
    _, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)

    def values(out):
        return [line.split()[3] for line in out.splitlines()
                if line and line.split()[0].isdigit()]

    assert values(out1) == values(out2)
    assert "exponent" in out1


def test_trace_snapshots_written(tmp_path, capsys):
    plem = tmp_path / "inst.plem"
    run(["gen", "--kind", "grid", "--n", "81", "--seed", "2",
         "--cap-max", "9", "--sources", "3", "-o", str(plem)], capsys)
    trace_dir = tmp_path / "trace"
    code, _, _ = run(["solve", str(plem), "--params", "r=24",
                      "--trace", str(trace_dir)], capsys)
    assert code == 0
    snaps = sorted(trace_dir.glob("*.pflo"))
    assert snaps
    for snap in snaps:
        parse_flow(snap.read_text())


def test_divisions_dump_written(tmp_path, capsys):
    plem = tmp_path / "inst.plem"
    run(["gen", "--kind", "grid", "--n", "256", "--seed", "4",
         "--cap-max", "9", "--sources", "3", "-o", str(plem)], capsys)
    dump = tmp_path / "divisions.txt"
    code, _, _ = run(["solve", str(plem), "--params", "r=32",
                      "--divisions", str(dump)], capsys)
    assert code == 0
    text = dump.read_text()
    assert text.startswith("divide n=256")
    assert "[0] n=" in text
