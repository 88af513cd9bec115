"""Recompute the reference values in tests/data/oracle_values.json.

Run from the repository root:  python3 scripts/freeze_oracles.py
"""

import json
import random
import sys
from importlib import resources
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402
from cohodim.fpgroup import parse_presentations  # noqa: E402

OUT = ROOT / "tests" / "data" / "oracle_values.json"


def corpus_complex(name):
    data = json.loads((resources.files("cohodim") / "corpus" / f"{name}.json").read_text())
    return data["simplices"], data.get("relative")


def main():
    groups = {}
    for name in oracles.MODELS:
        text = (resources.files("cohodim") / "corpus" / f"{name}.grp").read_text()
        pres = parse_presentations(text)[""]
        if not oracles.relators_hold(name, pres):
            raise SystemExit(f"model for {name} violates its relators")
        groups[name] = {"order": oracles.brute_force_order(name),
                        "abelian_invariants": oracles.brute_force_abelian_invariants(name)}

    rng = random.Random(20261014)
    snf = []
    fixed = [[[4, 6], [6, 4]], [[2, 0, 0], [0, 2, 0], [0, 0, -4]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]]]
    for m in fixed:
        snf.append({"matrix": m, "diagonal": oracles.determinantal_snf(m)})
    for _ in range(40):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        m = [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]
        snf.append({"matrix": m, "diagonal": oracles.determinantal_snf(m)})

    homology = {}
    for name in ("s2", "rp2_6", "torus", "mobius", "disk3"):
        facets, rel = corpus_complex(name)
        variants = [("absolute", ())]
        if rel:
            variants.append(("relative", rel))
        for tag, r in variants:
            homology[f"{name}/{tag}"] = {
                "betti_Q": oracles.betti_numbers(facets, r),
                **{f"betti_F{p}": oracles.betti_numbers(facets, r, p) for p in (2, 3, 5)},
                **{f"torsion_{p}": oracles.torsion_counts(facets, r, p) for p in (2, 3, 5)},
            }

    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps({"groups": groups, "snf": snf, "homology": homology}, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
