#!/usr/bin/env python3
"""End-to-end checks for the command line tool: frozen outputs, exit codes
and file round-trips. Usage: cli_golden.py <path-to-modal-binary>."""

import subprocess
import sys
import tempfile
from pathlib import Path

FAILURES = []


def run(*args, stdin=None):
    return subprocess.run(
        [BINARY, *args], capture_output=True, text=True, input=stdin, timeout=300
    )


def expect(name, proc, code, stdout=None):
    ok = proc.returncode == code and (stdout is None or proc.stdout == stdout)
    if not ok:
        FAILURES.append(
            f"{name}: rc={proc.returncode} (want {code}) stdout={proc.stdout!r} "
            f"stderr={proc.stderr!r}"
        )


TRANSLATION = (
    "p2 & (((p2 -> ~p3) & (p3 -> ~p2)) & []((p2 -> ~p3) & (p3 -> ~p2))) & "
    "(p2 -> <>p3) & true & true & [](p3 -> p1)\n"
)

CHAIN_1 = (
    "worlds 7\n"
    "rel 0 0\nrel 0 1\nrel 1 0\nrel 1 1\nrel 1 2\nrel 2 1\nrel 2 2\nrel 2 3\n"
    "rel 3 2\nrel 3 3\nrel 3 4\nrel 4 3\nrel 4 4\nrel 4 5\nrel 5 4\nrel 5 5\n"
    "rel 5 6\nrel 6 5\nrel 6 6\n"
    "val p1 0 4 5 6\n"
)


def main():
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)

        expect("fmt", run("fmt", "--formula", "p1->((p2)&p1)"), 0, "p1 -> p2 & p1\n")
        expect("fmt parse error", run("fmt", "--formula", "p1 &"), 2)
        expect("no subcommand", run(), 2)
        expect("help", run("--help"), 0)

        expect("sat unsat", run("sat", "--class", "KB", "--formula", "p1 & <>[]~p1"),
               0, "UNSAT\n")
        expect("sat sat", run("sat", "--formula", "p1 & <>[]~p1"),
               0, "SAT\nworld 0\n")

        witness = tmp / "witness.txt"
        expect("sat witness file",
               run("sat", "--formula", "p1 & <>[]~p1", "--witness", str(witness)),
               0, "SAT\nworld 0\n")
        model_text = witness.read_text()
        expect("witness round-trip checks",
               run("check", "--model", str(witness), "--world", "0",
                   "--formula", "p1 & <>[]~p1"),
               0, "true\n")
        expect("witness unavailable",
               run("sat", "--class", "KB", "--formula", "p1 & <>[]~p1",
                   "--witness", str(tmp / "none.txt")),
               1, "UNSAT\n")

        expect("valid", run("valid", "--class", "KB", "--formula", "p1 -> []<>p1"),
               0, "VALID\n")
        expect("invalid", run("valid", "--formula", "p1 -> []p1"),
               0, "INVALID\nworld 0\n")
        counter = tmp / "counter.txt"
        run("valid", "--formula", "p1 -> []p1", "--countermodel", str(counter))
        expect("countermodel refutes",
               run("check", "--model", str(counter), "--world", "0",
                   "--formula", "p1 -> []p1"),
               0, "false\n")

        expect("qbf-eval true",
               run("qbf-eval", "--qbf", "A p1 E p2 . (p1 -> p2) & (p2 -> p1)"),
               0, "true\n")
        expect("qbf-eval false", run("qbf-eval", "--qbf", "A p1 . p1"), 0, "false\n")
        expect("qbf-translate", run("qbf-translate", "--qbf", "E p1 . p1"),
               0, TRANSLATION)
        expect("qbf-witness false input", run("qbf-witness", "--qbf", "A p1 . p1"), 1)

        qbf_model = tmp / "qbf_model.txt"
        expect("qbf-witness",
               run("qbf-witness", "--qbf", "E p1 . p1", "--out", str(qbf_model)), 0, "")
        expect("qbf witness satisfies the translation",
               run("check", "--model", str(qbf_model), "--world", "0",
                   "--formula", TRANSLATION.strip()),
               0, "true\n")

        expect("onevar-chain", run("onevar-chain", "--k", "1"), 0, CHAIN_1)
        chain = tmp / "chain.txt"
        run("onevar-chain", "--k", "3", "--out", str(chain))
        expect("chain file parses",
               run("check", "--model", str(chain), "--world", "0", "--formula", "p1"),
               0, "true\n")

        base = tmp / "base.txt"
        base.write_text("worlds 1\nrel 0 0\nval p1 0\nval p2 0\n")
        attached = tmp / "attached.txt"
        expect("onevar-attach",
               run("onevar-attach", "--model", str(base), "--n", "1",
                   "--class", "KTB", "--out", str(attached)),
               0, "")
        expect("attached model answers probes",
               run("check", "--model", str(attached), "--world", "0",
                   "--formula", "~p1 & <>(p1 & <><>(((~p1 & []~p1) & <><>p1) & "
                                "<><><>(p1 & []p1)))"),
               0, "true\n")
        bad_base = tmp / "bad_base.txt"
        bad_base.write_text("worlds 1\nrel 0 0\nval p1 0\n")
        expect("attach guard violation",
               run("onevar-attach", "--model", str(bad_base), "--n", "1",
                   "--class", "KTB"),
               1)

        star = run("onevar-star", "--formula", "p1")
        expect("onevar-star", star, 0)
        embedded = run("onevar-embed", "--formula", "p1")
        expect("onevar-embed", embedded, 0)
        if star.stdout and embedded.stdout:
            if "p2" in star.stdout or "p2" in embedded.stdout:
                FAILURES.append("single-variable output mentions p2")

        expect("selftest one suite",
               run("selftest", "--suite", "chain-structure"),
               0, "PASS chain-structure (world counts and frame properties for k <= 10)\n")
        expect("selftest unknown suite", run("selftest", "--suite", "nope"), 1)

        # stdout must be identical run to run.
        again = run("sat", "--formula", "p1 & <>[]~p1", "--witness", str(witness))
        if witness.read_text() != model_text or again.stdout != "SAT\nworld 0\n":
            FAILURES.append("sat output is not reproducible")

    if FAILURES:
        for f in FAILURES:
            print("FAIL", f)
        return 1
    print("cli_golden: all checks passed")
    return 0


if __name__ == "__main__":
    if len(sys.argv) != 2:
        print("usage: cli_golden.py <modal binary>", file=sys.stderr)
        sys.exit(2)
    BINARY = sys.argv[1]
    sys.exit(main())
