import json

from blowup_profiles import cli


def run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSweep:
    def test_degenerate_two_rows(self, capsys):
        code, out, _ = run(["sweep", "--h-inv-min", "1.0", "--h-inv-max", "2.0",
                            "--steps", "2"], capsys)
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "h_inv,sigma,log_sigma,asym_log_sigma,f_residual"
        assert len(lines) == 3

    def test_sigma_strictly_decreasing(self, capsys):
        code, out, _ = run(["sweep", "--h-inv-min", "0.5", "--h-inv-max", "4.0",
                            "--steps", "12"], capsys)
        assert code == 0
        sig = [float(line.split(",")[1]) for line in out.strip().split("\n")[1:]]
        assert all(a > b for a, b in zip(sig, sig[1:]))

    def test_byte_stability(self, tmp_path, capsys):
        args = ["sweep", "--h-inv-min", "0.5", "--h-inv-max", "3.0",
                "--steps", "6", "--out"]
        f1, f2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert cli.main(args + [str(f1)]) == 0
        assert cli.main(args + [str(f2)]) == 0
        assert f1.read_bytes() == f2.read_bytes()
        assert b"\r" not in f1.read_bytes()

    def test_json_lines_format(self, capsys):
        code, out, _ = run(["sweep", "--h-inv-min", "1.0", "--h-inv-max", "2.0",
                            "--steps", "2", "--format", "json-lines"], capsys)
        assert code == 0
        rows = [json.loads(line) for line in out.strip().split("\n")]
        assert len(rows) == 2 and "sigma" in rows[0]

    def test_io_failure_exit_code(self, capsys):
        code, _, err = run(["sweep", "--h-inv-min", "1.0", "--h-inv-max", "2.0",
                            "--steps", "2", "--out", "/nonexistent/dir/x.csv"],
                           capsys)
        assert code == 1 and "cannot write" in err

    def test_bad_range_exit_code(self, capsys):
        code, _, err = run(["sweep", "--h-inv-min", "2.0", "--h-inv-max", "1.0",
                            "--steps", "4"], capsys)
        assert code == 2


class TestSolveCommands:
    def test_solve_sigma_row(self, capsys):
        code, out, _ = run(["solve-sigma", "--h", "1.0"], capsys)
        assert code == 0
        header, row = out.strip().split("\n")
        vals = dict(zip(header.split(","), map(float, row.split(","))))
        assert abs(vals["value"] - 0.07223260816095248) < 1e-10
        assert vals["converged"] == 1.0

    def test_solve_h_row(self, capsys):
        code, out, _ = run(["solve-h", "--p", "5.0"], capsys)
        assert code == 0
        row = out.strip().split("\n")[1]
        h = float(row.split(",")[0])
        assert abs(h - 2.715913) < 1e-3

    def test_solve_h_bad_p(self, capsys):
        code, _, err = run(["solve-h", "--p", "2.0"], capsys)
        assert code == 2


class TestProfileCommand:
    def test_requires_exactly_one_of_p_h(self, capsys):
        code, _, err = run(["profile"], capsys)
        assert code == 2
        code, _, err = run(["profile", "--p", "5", "--h", "1"], capsys)
        assert code == 2

    def test_p_run_with_sidecar(self, tmp_path, capsys):
        out = tmp_path / "prof.csv"
        code = cli.main(["profile", "--p", "5.0", "--z-max", "40",
                         "--samples", "300", "--out", str(out)])
        assert code == 0
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "z,phi_re,phi_im,eta_re,eta_im,abs_eta"
        assert len(lines) == 1 + 2 * 300 + 1        # symmetric grid plus z=0
        side = json.loads((tmp_path / "prof.csv.meta.jsonl").read_text())
        assert side["jump_residual"] <= 1e-8
        assert abs(side["sigma"] - 0.25) < 1e-9
        assert abs(side["energy"]) < 0.05           # tail-limited near zero

    def test_abs_eta_even_in_z(self, tmp_path):
        out = tmp_path / "prof.csv"
        assert cli.main(["profile", "--h", "1.0", "--z-max", "20",
                         "--samples", "100", "--out", str(out)]) == 0
        rows = [line.split(",") for line in out.read_text().strip().split("\n")[1:]]
        by_z = {float(r[0]): float(r[5]) for r in rows}
        for z, vabs in by_z.items():
            if z > 0:
                assert abs(by_z[-z] - vabs) < 1e-15

    def test_stdout_data_stderr_sidecar(self, capsys):
        # with --out -, stdout carries only the CSV; the sidecar goes to stderr
        code, out, err = run(["profile", "--h", "1.0", "--z-max", "10",
                              "--samples", "50"], capsys)
        assert code == 0
        assert out.startswith("z,phi_re")
        assert all("{" not in line for line in out.splitlines())
        side = json.loads(err.strip())
        assert "jump_residual" in side


class TestVerify:
    def test_fast_level_passes(self, capsys):
        code, out, err = run(["verify", "--level", "fast"], capsys)
        assert code == 0
        groups = [json.loads(line) for line in out.strip().split("\n")]
        assert all(g["passed"] for g in groups)
        names = {g["group"] for g in groups}
        assert "specfun-identities" in names
        assert "pohozhaev-energy" in names


class TestAsymptoticsCommand:
    def test_table(self, capsys):
        code, out, _ = run(["asymptotics"], capsys)
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("alpha_t,h_inv,sigma,branch")
        assert len(lines) == 1 + 18
        rel_errs = [float(line.split(",")[-1]) for line in lines[1:]]
        assert max(rel_errs) < 0.05
