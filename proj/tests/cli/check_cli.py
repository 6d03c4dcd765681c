"""End-to-end checks of the sskh CLI: JSON outputs against schemas, exit codes,
table headers, and byte-identical reruns under a fixed seed."""
import argparse
import csv
import filecmp
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

SCHEMA_FOR = {
    "d.meta.json": "dataset_meta",
    "hypothesis.json": "hypothesis",
    "errors_stats.json": "error_stats",
    "fig2_slope.json": "figure_slope",
    "fig7_slope.json": "figure_slope",
    "lwlr_secret.json": "lwlr_secret",
    "prf_params.json": "prf_params",
    "prf_homtest_summary.json": "prf_homtest_summary",
    "prf_startest_summary.json": "prf_startest_summary",
    "fano.json": "family",
    "small.json": "family",
    "doubled.json": "family",
    "verify.json": "verify",
    "bounds.json": "bounds",
    "brute.json": "brute",
    "mutinfo.json": "mutinfo",
}

HEADERS = {
    "d.csv": ["x", "y"],
    "errors.csv": ["x", "e"],
    "errors_hist.csv": ["e", "count"],
    "fig2_hist.csv": ["e", "count"],
    "lwlr_samples.csv": ["a_0", "a_1", "a_2", "a_3", "b"],
    "lwlr_compare.csv": ["trial", "x", "lwlr_error", "lwr_error"],
    "prf_outputs.csv": ["x_bits", "coord", "value"],
    "prf_homtest.csv": ["trial", "coord", "gap"],
    "prf_startest.csv": ["trial", "agreements", "coordinates"],
}

# Run in order inside one output directory; later steps read earlier files.
PIPELINE = [
    ["simulate", "--sigma", "30", "--coverage", "complete", "--name", "d"],
    ["fit", "--data", "d.csv", "--meta", "d.meta.json"],
    ["errors", "--data", "d.csv", "--hypothesis", "hypothesis.json", "--meta", "d.meta.json"],
    ["repro", "fig2", "--sigma", "100"],
    ["repro", "fig7", "--sigma", "30"],
    ["lwlr", "sample", "--table", "errors.csv", "--w", "4", "--count", "50", "--export-secret"],
    ["lwlr", "compare", "--table", "errors.csv", "--w", "4", "--trials", "50"],
    ["prf", "eval", "--table", "errors.csv", "--w", "2", "--leaves", "4", "--inputs", "4"],
    ["prf", "homtest", "--table", "errors.csv", "--leaves", "8", "--trials", "20"],
    ["prf", "startest", "--sigma", "10", "--leaves", "4", "--trials", "20"],
    ["setfam", "construct", "fano", "--name", "fano"],
    ["setfam", "construct", "small-n", "--m", "3", "--k", "4", "--t", "1", "--name", "small"],
    ["setfam", "construct", "double", "--family", "small.json", "--k", "4", "--t", "1", "--name", "doubled"],
    ["setfam", "verify", "--family", "doubled.json", "--k", "8", "--t", "1"],
    ["setfam", "bounds", "--n", "7", "--k", "3", "--t", "1", "--m", "7"],
    ["setfam", "brute", "--n", "7", "--k", "3", "--t", "1"],
    ["mutinfo", "--xs", "1,2,3,4,5", "--ws", "1,7,8,9,10", "--a", "1", "--sigma", "2", "--trials", "2000"],
]

FAILURES = []


def check(ok, what):
    print(("PASS " if ok else "FAIL ") + what)
    if not ok:
        FAILURES.append(what)


def run(exe, args, cwd, seed="7"):
    return subprocess.run([exe, "--seed", seed, "--out-dir", str(cwd), *args],
                          cwd=cwd, capture_output=True, text=True, timeout=600)


def run_pipeline(exe, out):
    for args in PIPELINE:
        r = run(exe, args, out)
        check(r.returncode == 0, " ".join(args) + (" " + r.stderr.strip() if r.returncode else ""))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--exe", required=True)
    ap.add_argument("--schemas", required=True)
    opts = ap.parse_args()
    schemas = {p.name.split(".")[0]: json.loads(p.read_text())
               for p in Path(opts.schemas).glob("*.schema.json")}

    exe = str(Path(opts.exe).resolve())
    with tempfile.TemporaryDirectory() as tmp:
        a, b, c = Path(tmp, "a"), Path(tmp, "b"), Path(tmp, "c")
        for d in (a, b, c):
            d.mkdir()
        run_pipeline(exe, a)

        # same seed, separate directory: identical bytes
        run_pipeline(exe, b)
        same = filecmp.dircmp(a, b)
        check(not same.diff_files and not same.left_only and not same.right_only,
              f"rerun is byte-identical (diff {same.diff_files}, only {same.left_only + same.right_only})")

        for name, schema in SCHEMA_FOR.items():
            path = a / name
            if not path.exists():
                check(False, f"{name} written")
                continue
            try:
                jsonschema.validate(json.loads(path.read_text()), schemas[schema])
                check(True, f"{name} matches {schema}")
            except jsonschema.ValidationError as e:
                check(False, f"{name} matches {schema}: {e.message}")

        for name, header in HEADERS.items():
            with open(a / name, newline="") as f:
                got = next(csv.reader(f), [])
            check(got == header, f"{name} header {got}")

        bounds = json.loads((a / "bounds.json").read_text())
        check(bounds["simple"] == 7, "bounds --n 7 --k 3 --t 1 gives simple 7")
        secret = json.loads((a / "lwlr_secret.json").read_text())["secret"]
        check(len(secret) == 4, "secret has the requested dimension")
        r = run(exe, ["lwlr", "sample", "--w", "2", "--count", "3"], c)
        check(r.returncode == 0 and not (c / "lwlr_secret.json").exists(), "secret not written by default")

        r = run(exe, ["mutinfo", "--xs", "1,2,3", "--ws", "4,5,6", "--a", "0", "--trials", "0"], c)
        check(r.returncode == 0 and json.loads((c / "mutinfo.json").read_text())["mi_closed"] == 0.0,
              "mutinfo --a 0 gives mi_closed 0")

        # json table format
        r = run(exe, ["--format", "json", "lwlr", "sample", "--w", "2", "--count", "3"], c)
        rows = json.loads((c / "lwlr_samples.json").read_text()) if r.returncode == 0 else None
        check(isinstance(rows, list) and len(rows) == 3 and set(rows[0]) == {"a_0", "a_1", "b"},
              "--format json writes row objects")

        # config file fills flags not given on the command line
        (c / "cfg.json").write_text(json.dumps({"n": 9, "k": 3, "t": 1}))
        r = run(exe, ["--config", str(c / "cfg.json"), "setfam", "bounds", "--n", "7"], c)
        cfg_bounds = json.loads((c / "bounds.json").read_text()) if r.returncode == 0 else {}
        check(cfg_bounds.get("n") == 7 and cfg_bounds.get("k") == 3, "--config fills missing flags")

        # exit codes and the stderr error document
        r = run(exe, ["setfam", "construct", "small-n", "--m", "2", "--k", "3", "--t", "5"], c)
        err_ok = False
        if r.returncode == 1:
            try:
                jsonschema.validate(json.loads(r.stderr), schemas["error"])
                err_ok = True
            except (json.JSONDecodeError, jsonschema.ValidationError):
                pass
        check(err_ok, "module error exits 1 with error JSON")
        r = run(exe, ["fit", "--data", str(c / "missing.csv"), "--modulus", "97"], c)
        check(r.returncode == 1 and json.loads(r.stderr)["error"] == "io", "missing input is an io error")
        r = run(exe, ["setfam", "bounds", "--n", "7"], c)
        check(r.returncode == 2, "usage error exits 2")
        r = run(exe, ["nosuch"], c)
        check(r.returncode == 2, "unknown subcommand exits 2")

    print(f"{len(FAILURES)} failure(s)")
    return 1 if FAILURES else 0


if __name__ == "__main__":
    sys.exit(main())
