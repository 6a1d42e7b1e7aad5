#!/usr/bin/env python3
"""Black-box checks of the mlbiv command-line contract.

Usage: cli_contract.py <path-to-mlbiv>
"""
import csv
import io
import json
import os
import subprocess
import sys
import tempfile

FIELDS = ["x_re", "x_im", "y_re", "y_im", "value_re", "value_im", "method", "err_est", "warnings"]

failures = []


def run(args, env=None):
    e = dict(os.environ)
    e.pop("MLBIV_TOL", None)
    if env:
        e.update(env)
    return subprocess.run([BIN] + args, capture_output=True, text=True, env=e, timeout=300)


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


def roundtrips(text):
    return "%.17g" % float(text) == text


def main():
    r = run(["selftest"])
    check(r.returncode == 0, "selftest exits 0")
    suites = [l for l in r.stdout.splitlines() if l.startswith(("PASS", "FAIL"))]
    check(len(suites) >= 5 and all(l.startswith("PASS") for l in suites), "selftest lists every suite as PASS")

    r = run(["selftest", "--suite", "gamma"])
    check(r.returncode == 0 and sum(l.startswith("PASS") for l in r.stdout.splitlines()) == 1,
          "selftest --suite gamma runs one suite")
    r = run(["selftest", "--suite", "nonexistent"])
    check(r.returncode == 1 and "gamma" in r.stderr, "unknown suite exits 1 and lists suites")

    grid = ["--alpha", "0.9", "--beta", "0.8", "--mu-re", "1.5", "--mu-im", "0.25",
            "--x-start", "-2", "--x-stop", "3", "--x-count", "3",
            "--y-start", "0.3", "--y-stop", "2.2", "--y-count", "3"]
    r = run(["sweep"] + grid)
    lines = r.stdout.splitlines()
    check(r.returncode == 0, "3x3 sweep exits 0")
    check(len(lines) == 10, "3x3 csv sweep has 9 data rows + header (got %d lines)" % len(lines))
    check(lines[0] == ",".join(FIELDS), "csv header is fixed")
    rows = list(csv.DictReader(io.StringIO(r.stdout)))
    numeric = [row[k] for row in rows for k in FIELDS if k not in ("method", "warnings")]
    check(all(roundtrips(t) for t in numeric), "every csv number is 17-digit round-trip exact")

    # The same point through eval must give bit-identical doubles.
    row = rows[4]
    r = run(["eval", "--alpha", "0.9", "--beta", "0.8", "--mu-re", "1.5", "--mu-im", "0.25",
             "--x-re", row["x_re"], "--x-im", row["x_im"], "--y-re", row["y_re"], "--y-im", row["y_im"]])
    parts = r.stdout.split()
    check(r.returncode == 0 and float(parts[0]) == float(row["value_re"]) and float(parts[1]) == float(row["value_im"]),
          "eval reproduces a sweep value bit-for-bit")

    r = run(["sweep"] + grid + ["--format", "json"])
    data = json.loads(r.stdout)
    check(r.returncode == 0 and len(data) == 9 and all(list(o.keys()) == FIELDS for o in data),
          "json sweep: 9 objects with the csv field names in order")
    check([float(o["value_re"]) for o in data] == [float(row["value_re"]) for row in rows],
          "json and csv values are identical")

    with tempfile.TemporaryDirectory() as d:
        cfg = os.path.join(d, "sweep.cfg")
        out = os.path.join(d, "out.csv")
        with open(cfg, "w") as f:
            f.write("# 1x1 sweep at the origin\nalpha = 0.9\nbeta = 0.9\nmu-re = 2\n"
                    "x-start = 0\nx-stop = 0\nx-count = 1\ny-start = 0\ny-stop = 0\ny-count = 1\n")
        r = run(["sweep", "--config", cfg, "--output", out])
        with open(out) as f:
            got = list(csv.DictReader(f))
        check(r.returncode == 0 and len(got) == 1 and float(got[0]["value_re"]) == 1.0,
              "config-file sweep at the origin with mu=2 gives 1/Gamma(2) = 1")
        r = run(["sweep", "--config", cfg, "--mu-re", "3"])
        check(r.returncode == 0 and float(list(csv.DictReader(io.StringIO(r.stdout)))[0]["value_re"]) == 0.5,
              "flags override config entries")
        r = run(["sweep", "--config", cfg, "--output", os.path.join(d, "missing", "out.csv")])
        check(r.returncode == 1, "unwritable output exits 1")

    r = run(["eval", "--alpha", "1", "--beta", "1", "--mu-re", "1", "--x-re", "0", "--y-re", "0"])
    check(r.returncode == 0 and r.stdout.startswith("1.0 0.0 "), "eval at the origin prints '1.0 0.0 ...'")
    r = run(["eval", "--alpha", "0.9", "--beta", "0.9", "--mu-re", "3", "--x-re", "0", "--y-re", "0"])
    check(r.returncode == 0 and float(r.stdout.split()[0]) == 0.5, "eval gives 1/Gamma(3) = 0.5")
    r = run(["eval", "--alpha", "3", "--beta", "0.5", "--mu-re", "1", "--x-re", "1", "--y-re", "1", "--method", "contour"])
    check(r.returncode == 2 and "0 < alpha < 2" in r.stderr, "contour with alpha=3 exits 2 citing 0 < alpha < 2")
    r = run(["eval", "--alpha", "0.9", "--beta", "0.9"])
    check(r.returncode == 1 and "Usage" in r.stderr, "missing --mu-re exits 1 with usage on stderr")
    r = run(["eval", "--alpha", "abc", "--beta", "1", "--mu-re", "1"])
    check(r.returncode == 1, "malformed number exits 1")
    r = run(["frobnicate"])
    check(r.returncode == 1, "unknown subcommand exits 1")

    polar = run(["eval", "--alpha", "0.9", "--beta", "0.7", "--mu-re", "1", "--x-mod", "2", "--x-arg", "0",
                 "--y-mod", "1", "--y-arg", "0"])
    cart = run(["eval", "--alpha", "0.9", "--beta", "0.7", "--mu-re", "1", "--x-re", "2", "--y-re", "1"])
    check(polar.returncode == 0 and polar.stdout.split()[:2] == cart.stdout.split()[:2], "polar and cartesian input agree")

    base = ["eval", "--alpha", "0.9", "--beta", "0.9", "--mu-re", "1", "--x-re", "5", "--y-re", "4", "--method", "series"]
    r = run(base, env={"MLBIV_TOL": "nonsense"})
    check(r.returncode == 1, "malformed MLBIV_TOL exits 1")
    r = run(base, env={"MLBIV_TOL": "1e-30"})
    check(r.returncode == 0 and "tolerance-not-met" in r.stdout, "MLBIV_TOL sets the default tolerance")
    r = run(base + ["--tol", "1e-6"], env={"MLBIV_TOL": "1e-30"})
    check(r.returncode == 0 and "tolerance-not-met" not in r.stdout, "--tol overrides MLBIV_TOL")

    print("%d failure(s)" % len(failures))
    return 1 if failures else 0


if __name__ == "__main__":
    BIN = sys.argv[1]
    sys.exit(main())
