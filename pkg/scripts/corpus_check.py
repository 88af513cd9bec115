"""Run the corpus claims end to end through the command-line front end.

Each check runs one CLI command and looks for an expected exit status and a
fragment of its output.  Exit status is 0 when every check passes.
"""

from __future__ import annotations

import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO

from cohodim.cli import main as cli_main

CHECKS = [
    ("Gamma_2 abelianizes to Z/4 + Z/4", ["abelianize", "gamma2.grp"], 0, "Z/4 ⊕ Z/4"),
    ("Gamma_1 abelianizes to Z/2 + Z/2 + Z/4", ["abelianize", "gamma1.grp"], 0, "Z/2 ⊕ Z/2 ⊕ Z/4"),
    ("D_infinity abelianizes to Z/2 + Z/2", ["abelianize", "dinfty.grp"], 0, "Z/2 ⊕ Z/2"),
    ("trivial presentation abelianizes to 0", ["abelianize", "trivial.grp", "--format", "json"], 0, "\"invariant_factors\": []"),
    ("D_infinity enumeration hits the coset cap", ["enumerate", "dinfty.grp", "--max-cosets", "5000"], 2,
     "resource limit"),
    ("S4 reduction reaches order 1", ["reduce", "s4.grp"], 0, "terminal order 1"),
    ("A5 reduction stays at order 60", ["reduce", "a5.grp"], 0, "terminal order 60"),
    ("Heisenberg group of order 27 is nilpotent", ["series", "heis27.grp"], 0, "yes, class 2"),
    ("amalgam Z/4 *_Z/2 Z/4 abelianizes to Z/2 + Z/4",
     ["amalgam", "amalgam_z4_z2_z4.grp", "--f1", "x^2", "--f2", "y^2"], 0, "Z/2 ⊕ Z/4"),
    ("Moebius band rel boundary, mod-2 Bockstein exact",
     ["bockstein", "mobius.json", "--relative", "--sequence", "integral:2"], 0, "exact"),
    ("RP^2 has H_1 = Z/2", ["homology", "rp2_6.json"], 0, "Z/2"),
]

FATES = [(2, [1, 1, 1]), (3, [1, 0, 0])]


def run(argv: list[str]) -> tuple[int, str]:
    out, err = StringIO(), StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        status = cli_main(argv)
    return status, out.getvalue() + err.getvalue()


def report(ok: bool, label: str, extra: str = "") -> int:
    print(f"{'ok  ' if ok else 'FAIL'}  {label}" + ("" if ok else f"  ({extra})"))
    return not ok


def main() -> int:
    failures = 0
    for label, argv, status, needle in CHECKS:
        got, out = run(argv)
        failures += report(got == status and needle in out, label, f"exit {got}: {out.strip()[:200]}")
    for p, column in FATES:
        got, out = run(["pontryagin", "--triangles", "1", "--generations", "2", "--prime", str(p),
                        "--format", "json"])
        fate = None
        if got == 0:
            fate = [r["dim_H2_rel"] for r in json.loads(out)["tables"][0]["rows"]]
        failures += report(fate == column, f"relative class over Z/{p} has fate {column}", f"got {fate}")
    print(f"{failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
