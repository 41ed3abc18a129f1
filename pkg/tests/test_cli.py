import os
import stat

import pytest

from apresidues.cli import (
    EXIT_ABSENT,
    EXIT_BEYOND_BOUND,
    EXIT_DOMAIN,
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_USAGE,
    main,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSymbol:
    def test_published_nonresidue(self, capsys):
        code, out, _ = run_cli(capsys, "symbol", "--n", "5", "--p", "1000000000000000000000007")
        assert code == EXIT_OK
        assert "Nonresidue" in out
        assert "witness" in out

    def test_square_is_residue(self, capsys):
        code, out, _ = run_cli(capsys, "symbol", "--n", "4", "--p", "41", "--k", "2", "--allow-small")
        assert code == EXIT_OK
        assert "Residue" in out

    def test_seventh_power_table_head_is_residue(self, capsys):
        # 19 heads the published table, which lists exact-order elements;
        # under the Euler criterion it is a residue
        code, out, _ = run_cli(capsys, "symbol", "--n", "19", "--p", "10^48+217", "--k", "7")
        assert code == EXIT_OK
        assert "verdict: Residue" in out

    def test_domain_error_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "symbol", "--n", "5", "--p", "40")
        assert code == EXIT_DOMAIN
        assert "domain error" in err

    def test_small_prime_needs_flag(self, capsys):
        code, _, err = run_cli(capsys, "symbol", "--n", "4", "--p", "13")
        assert code == EXIT_DOMAIN

    def test_usage_error_exit_code(self, capsys):
        code, _, _ = run_cli(capsys, "symbol", "--n", "5")
        assert code == EXIT_USAGE

    def test_unknown_command(self, capsys):
        code, _, _ = run_cli(capsys, "frobnicate")
        assert code == EXIT_USAGE


class TestSearch:
    def test_published_example(self, capsys):
        code, out, _ = run_cli(capsys, "search", "--target", "nonresidue", "--k", "2",
                               "--q", "4", "--a", "1", "--p", "10^24+7")
        assert code == EXIT_OK
        assert "found: 5" in out
        assert "within bound: True" in out

    def test_generator_target(self, capsys):
        code, out, _ = run_cli(capsys, "search", "--target", "generator", "--k", "3",
                               "--q", "8", "--a", "7", "--p", "2^128+51",
                               "--factors", "2,3,17,89,6481,5816689,12275703273579557140363")
        assert code == EXIT_OK
        assert "found: 23" in out

    def test_generator_without_factors_is_domain_error(self, capsys):
        code, _, err = run_cli(capsys, "search", "--target", "generator", "--k", "3",
                               "--q", "8", "--a", "7", "--p", "2^128+51")
        assert code == EXIT_DOMAIN

    def test_absent_exit_code(self, capsys):
        code, out, _ = run_cli(capsys, "search", "--target", "residue", "--k", "2",
                               "--q", "4", "--a", "3", "--p", "41", "--allow-small",
                               "--scan-limit", "20")
        assert code == EXIT_ABSENT
        assert "none" in out

    def test_beyond_bound_exit_code(self, capsys):
        # p = 17: bound = log(17)*loglog(17)^3 ~ 2.83*... is tiny (< 3), and
        # the least prime residue 1 mod 4 mod 17 is 13 > bound
        code, out, _ = run_cli(capsys, "search", "--target", "residue", "--k", "2",
                               "--q", "4", "--a", "1", "--p", "17")
        assert code == EXIT_BEYOND_BOUND
        assert "within bound: False" in out


class TestCount:
    def test_count_output(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--target", "nonresidue", "--k", "2",
                               "--q", "4", "--a", "1", "--p", "10^24+7")
        assert code == EXIT_OK
        assert "main term       = 892.2" in out
        assert "weighted count" in out
        assert "density estimate" in out

    def test_count_report_written(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "count", "--target", "nonresidue", "--k", "2",
                               "--q", "4", "--a", "1", "--p", "41", "--x", "300",
                               "--allow-small", "--out-dir", str(tmp_path))
        assert code == EXIT_OK
        csv_path = tmp_path / "count-k2-q4-a1.count.csv"
        assert csv_path.exists()
        body = csv_path.read_text().splitlines()
        assert body[1].startswith("p,k,q,a,target,x,")
        assert body[2].startswith("41,2,4,1,nonresidue,300,")


class TestReproduce:
    def test_all_scenarios_exit_zero(self, capsys):
        for name in ("example-9.1", "example-9.2", "example-11.1", "example-11.2", "f41"):
            code, out, _ = run_cli(capsys, "reproduce", name)
            assert code == EXIT_OK, name
            assert "0 FAIL" in out

    def test_discrepancies_are_visible(self, capsys):
        code, out, _ = run_cli(capsys, "reproduce", "example-9.1")
        assert code == EXIT_OK
        assert "DISCREPANCY" in out
        assert "composite" in out

    def test_unknown_scenario_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "reproduce", "example-0")
        assert code == EXIT_USAGE
        assert "unknown scenario" in err


class TestExpsumAndPatterns:
    def test_expsum_sample(self, capsys):
        code, out, _ = run_cli(capsys, "expsum", "--p", "41", "--b", "1", "--x-cutoff", "40")
        assert code == EXIT_OK
        assert "ratio" in out

    def test_expsum_table_written(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "expsum", "--p", "101", "--max-ratio-table",
                               "--out-dir", str(tmp_path))
        assert code == EXIT_OK
        assert (tmp_path / "expsum-p101.json").exists()
        assert (tmp_path / "expsum-p101.max_ratio.csv").exists()

    def test_patterns_output(self, capsys):
        code, out, _ = run_cli(capsys, "patterns", "--p", "41", "--x", "39")
        assert code == EXIT_OK
        assert "'RR': 9" in out
        assert "twin nonresidue pairs: 2/5" in out


class TestSweep:
    def write_config(self, tmp_path, text):
        cfg = tmp_path / "sweep.conf"
        cfg.write_text(text, encoding="utf-8")
        return str(cfg)

    def test_least_nonresidue_campaign(self, capsys, tmp_path):
        cfg = self.write_config(tmp_path, f"""
campaign = least_nonresidue
prime_min = 100000
prime_max = 140000
prime_count = 12
epsilon = 0.5
out_dir = {tmp_path}/reports
""")
        code, out, _ = run_cli(capsys, "sweep", "--config", cfg)
        assert code == EXIT_OK
        assert "0 beyond-bound rows" in out
        assert (tmp_path / "reports" / "least_nonresidue.json").exists()
        assert (tmp_path / "reports" / "least_nonresidue.least_nonresidue.csv").exists()

    def test_reports_byte_stable_below_header(self, capsys, tmp_path):
        cfg = self.write_config(tmp_path, f"""
campaign = expsum
p_list = 101,241
out_dir = {tmp_path}/r1
""")
        run_cli(capsys, "sweep", "--config", cfg)
        cfg2 = self.write_config(tmp_path, f"""
campaign = expsum
p_list = 101,241
out_dir = {tmp_path}/r2
""")
        run_cli(capsys, "sweep", "--config", cfg2)
        a = (tmp_path / "r1" / "expsum.max_ratio.csv").read_text().split("\n", 1)[1]
        b = (tmp_path / "r2" / "expsum.max_ratio.csv").read_text().split("\n", 1)[1]
        assert a == b

    def test_q_rule_loglog2_widens_the_range(self, capsys, tmp_path):
        cfg = self.write_config(tmp_path, f"""
campaign = least_nonresidue
prime_min = 100000
prime_max = 110000
prime_count = 2
q_rule = loglog2
out_dir = {tmp_path}/reports
""")
        code, out, _ = run_cli(capsys, "sweep", "--config", cfg)
        assert code == EXIT_OK
        csv_rows = (tmp_path / "reports" / "least_nonresidue.least_nonresidue.csv").read_text().splitlines()
        qs = {int(line.split(",")[1]) for line in csv_rows[2:]}
        assert max(qs) >= 6  # ceil(loglog(1e5)^2) = 6

    def test_least_nonresidue_parallel_workers(self, capsys, tmp_path):
        cfg = self.write_config(tmp_path, f"""
campaign = least_nonresidue
prime_min = 100000
prime_max = 120000
prime_count = 6
epsilon = 0.5
workers = 2
out_dir = {tmp_path}/reports
""")
        code, out, _ = run_cli(capsys, "sweep", "--config", cfg)
        assert code == EXIT_OK
        assert "0 beyond-bound rows" in out

    def test_density_campaign(self, capsys, tmp_path):
        cfg = self.write_config(tmp_path, f"""
campaign = density
k = 2
q = 1
a = 0
prime_min = 10000
prime_max = 10600
prime_count = 5
x_rule = prime
out_dir = {tmp_path}/reports
""")
        code, out, _ = run_cli(capsys, "sweep", "--config", cfg)
        assert code == EXIT_OK
        assert (tmp_path / "reports" / "density.density.csv").exists()

    def test_unknown_campaign_is_domain_error(self, capsys, tmp_path):
        cfg = self.write_config(tmp_path, "campaign = nope\n")
        code, _, err = run_cli(capsys, "sweep", "--config", cfg)
        assert code == EXIT_DOMAIN

    def test_unwritable_out_dir_is_resource_error(self, capsys, tmp_path):
        if os.geteuid() == 0:
            pytest.skip("running as root; directory permissions are not enforced")
        blocked = tmp_path / "blocked"
        blocked.mkdir()
        blocked.chmod(stat.S_IRUSR | stat.S_IXUSR)
        cfg = self.write_config(tmp_path, f"""
campaign = expsum
p_list = 101
out_dir = {blocked}/nested
""")
        code, _, err = run_cli(capsys, "sweep", "--config", cfg)
        assert code == EXIT_RESOURCE
