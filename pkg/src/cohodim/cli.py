"""``cohodim`` command line front end.

Every subcommand prints one report on standard output, as aligned text or as
a single JSON object carrying ``"schema": "1"``.  Exit status is 0 on
success, 1 on a domain or usage error and 2 when a resource cap is hit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import __version__
from .abgroup import abelianization, factorize
from .errors import ResourceExceeded
from .fpgroup import (
    Presentation,
    amalgamated_product,
    format_presentation,
    parse_presentations,
    parse_word,
)
from .permgroup import (
    DEFAULT_ELEMENT_CAP,
    DEFAULT_MAX_COSETS,
    subgroup_series,
    to_permutation_group,
    todd_coxeter,
)
from .pontryagin import DEFAULT_SIMPLEX_CAP, rel_class_fate, stage
from .reduction import (
    lcs_tensor_epimorphism_check,
    property_propagation_check,
    solvable_reduction,
    torsion_condition_classifier,
)
from .simplicial import (
    CoefficientSequence,
    Coefficients,
    SimplicialComplex,
    bockstein_check,
    build_chain_complex,
    cohomology,
    homology,
    pair_sequence_check,
)

SCHEMA_VERSION = "1"
COMMANDS = ("abelianize", "enumerate", "series", "reduce", "classify13", "lemma32",
            "amalgam", "homology", "bockstein", "pontryagin")

ENV_CAPS = {
    "max_cosets": ("COHODIM_MAX_COSETS", DEFAULT_MAX_COSETS),
    "element_cap": ("COHODIM_ELEMENT_CAP", DEFAULT_ELEMENT_CAP),
    "simplex_cap": ("COHODIM_SIMPLEX_CAP", DEFAULT_SIMPLEX_CAP),
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    max_cosets: int = DEFAULT_MAX_COSETS
    element_cap: int = DEFAULT_ELEMENT_CAP
    simplex_cap: int = DEFAULT_SIMPLEX_CAP
    output_format: str = "text"
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        for name in ("max_cosets", "element_cap", "simplex_cap"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name.replace('_', '-')} must be positive")
        if self.output_format not in ("text", "json"):
            raise UsageError(f"unknown format {self.output_format!r}")


@dataclass
class Report:
    text: str
    data: dict

    def render(self, cfg: RunConfig) -> str:
        if cfg.output_format == "json":
            body = {"schema": SCHEMA_VERSION, "command": cfg.command, **self.data}
            return json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False)
        return self.text


class _Stage:
    """Name of the step currently running, for error messages."""

    name = "startup"


# --------------------------------------------------------------------------
# Inputs


def resolve_input(path: str) -> Path:
    """A literal path if it exists, else a file from the bundled corpus
    (``corpus/s4.grp``, ``s4.grp`` or ``s4``)."""
    p = Path(path)
    if p.exists():
        return p
    corpus = resources.files("cohodim") / "corpus"
    name = p.name
    for cand in (name, name + ".grp", name + ".json"):
        c = corpus / cand
        if c.is_file():
            return Path(str(c))
    raise FileNotFoundError(f"cannot read {path!r}: no such file")


def load_presentations(path: str) -> dict[str, Presentation]:
    _Stage.name = f"reading {path}"
    text = resolve_input(path).read_text(encoding="utf-8")
    _Stage.name = f"parsing {path}"
    return parse_presentations(text)


def load_complex(path: str):
    _Stage.name = f"reading {path}"
    return SimplicialComplex.load(resolve_input(path))


def _pick(blocks: dict[str, Presentation], name: str | None, path: str) -> list[tuple[str, Presentation]]:
    if name is None:
        return list(blocks.items())
    if name not in blocks:
        raise ValueError(f"{path} has no block {name!r}")
    return [(name, blocks[name])]


def _label(name: str, text: str, many: bool) -> str:
    return f"{name}: {text}" if many and name else text


# --------------------------------------------------------------------------
# Group commands


def cmd_abelianize(cfg: RunConfig) -> Report:
    items = _pick(load_presentations(cfg.inputs[0]), cfg.options.get("block"), cfg.inputs[0])
    _Stage.name = "abelianization"
    lines, data = [], []
    for name, p in items:
        ab = abelianization(p)
        lines.append(_label(name, str(ab), len(items) > 1))
        data.append({"name": name, "group": ab.to_json(), "text": str(ab)})
    return Report("\n".join(lines), {"results": data})


def _finite_group(cfg: RunConfig, p: Presentation):
    _Stage.name = "coset enumeration"
    t = todd_coxeter(p, max_cosets=cfg.max_cosets)
    _Stage.name = "permutation group"
    return t, to_permutation_group(t, cfg.element_cap)


def cmd_enumerate(cfg: RunConfig) -> Report:
    items = _pick(load_presentations(cfg.inputs[0]), cfg.options.get("block"), cfg.inputs[0])
    lines, data = [], []
    for name, p in items:
        sub = [parse_word(w, p.generator_names) for w in cfg.options.get("subgroup") or []]
        _Stage.name = "coset enumeration"
        t = todd_coxeter(p, sub, max_cosets=cfg.max_cosets)
        lines.append(_label(name, f"{t.num_cosets} cosets", len(items) > 1))
        if cfg.options.get("table"):
            lines.append(t.to_csv().rstrip("\n"))
        data.append({"name": name, "cosets": t.num_cosets,
                     "table": [list(r) for r in t.action] if cfg.options.get("table") else None})
    return Report("\n".join(lines), {"results": data})


def cmd_series(cfg: RunConfig) -> Report:
    items = _pick(load_presentations(cfg.inputs[0]), cfg.options.get("block"), cfg.inputs[0])
    lines, data = [], []
    for name, p in items:
        _, g = _finite_group(cfg, p)
        _Stage.name = "subgroup series"
        s = subgroup_series(g)
        if len(items) > 1:
            lines.append(f"{name}:")
        lines += [
            f"order            {g.order}",
            f"lower central    {' > '.join(str(h.order) for h in s.lower_central)}",
            f"derived          {' > '.join(str(h.order) for h in s.derived)}",
            f"nilpotent        {'yes, class ' + str(s.nilpotency_class) if s.nilpotent else 'no'}",
            f"solvable         {'yes, length ' + str(s.derived_length) if s.solvable else 'no'}",
        ]
        data.append({"name": name, "order": g.order, **s.to_json()})
    return Report("\n".join(lines), {"results": data})


def cmd_reduce(cfg: RunConfig) -> Report:
    items = _pick(load_presentations(cfg.inputs[0]), cfg.options.get("block"), cfg.inputs[0])
    lines, data = [], []
    for name, p in items:
        _, g = _finite_group(cfg, p)
        _Stage.name = "torsion-killing reduction"
        trace = solvable_reduction(g)
        if len(items) > 1:
            lines.append(f"{name}:")
        lines.append(trace.to_text())
        data.append({"name": name, **trace.to_json()})
    return Report("\n".join(lines), {"results": data})


def cmd_classify13(cfg: RunConfig) -> Report:
    items = _pick(load_presentations(cfg.inputs[0]), cfg.options.get("block"), cfg.inputs[0])
    lines, data = [], []
    yn = {True: "yes", False: "no"}
    for name, p in items:
        _Stage.name = "torsion classifier"
        rep = torsion_condition_classifier(p, cfg.max_cosets)
        if len(items) > 1:
            lines.append(f"{name}:")
        lines.append(f"order {rep.order}, abelianization {rep.abelianization}, "
                     f"torsion {yn[rep.is_torsion]}")
        lines.append(f"{'p':>3}  {'Tor_p':>5}  {'p-divisible':>11}  {'Tor_p(ab)':>9}  condition")
        for c in rep.per_prime:
            lines.append(f"{c.p:>3}  {yn[c.tor_p_nontrivial]:>5}  {yn[c.p_divisible]:>11}  "
                         f"{yn[c.tor_p_ab_nontrivial]:>9}  {'met' if c.condition_met else 'fails'}")
        data.append({"name": name, **rep.to_json()})
    return Report("\n".join(lines), {"results": data})


def cmd_lemma32(cfg: RunConfig) -> Report:
    items = _pick(load_presentations(cfg.inputs[0]), cfg.options.get("block"), cfg.inputs[0])
    lines, data = [], []
    yn = {True: "yes", False: "no"}
    for name, p in items:
        _, g = _finite_group(cfg, p)
        _Stage.name = "lower central series"
        s = subgroup_series(g)
        top = len(s.lower_central) - 1
        levels = [cfg.options["level"]] if cfg.options.get("level") else list(range(1, max(top, 1) + 1))
        if len(items) > 1:
            lines.append(f"{name}:")
        lines.append(f"order {g.order}, nilpotent {yn[s.nilpotent]}")
        lines.append(f"{'i':>2}  {'F_i':<16} {'G_ab':<16} {'F_i+1':<16} well-defined  bilinear  surjective")
        checks = []
        for i in levels:
            _Stage.name = f"epimorphism check at level {i}"
            r = lcs_tensor_epimorphism_check(g, i)
            lines.append(f"{i:>2}  {str(r.source_left):<16} {str(r.source_right):<16} {str(r.target):<16} "
                         f"{yn[r.well_defined]:>12}  {yn[r.bilinear]:>8}  {yn[r.surjective]:>10}")
            checks.append(r.to_json())
        props = []
        for q in sorted(factorize(g.order)) if g.order > 1 else []:
            _Stage.name = f"p-group propagation at p = {q}"
            pr = property_propagation_check(g, q)
            props.append(pr.to_json())
            lines.append(f"p = {q}: ab is p-group {yn[pr.ab_is_p_group]}, group is p-group "
                         f"{yn[pr.g_is_p_group]}, consistent {yn[pr.consistent]}")
        data.append({"name": name, "order": g.order, "nilpotent": s.nilpotent,
                     "levels": checks, "propagation": props})
    return Report("\n".join(lines), {"results": data})


def _split_words(values) -> list[str]:
    out = []
    for v in values or []:
        out += [w for w in (x.strip() for x in v.split(";")) if w]
    return out


def cmd_amalgam(cfg: RunConfig) -> Report:
    blocks = load_presentations(cfg.inputs[0])
    o = cfg.options
    names = (o.get("left") or "left", o.get("right") or "right", o.get("over") or "over")
    for n in names[:2]:
        if n not in blocks:
            raise ValueError(f"{cfg.inputs[0]} has no block {n!r}")
    p1, p2 = blocks[names[0]], blocks[names[1]]
    a = blocks.get(names[2], Presentation(()))
    _Stage.name = "amalgamated product"
    f1 = [parse_word(w, p1.generator_names) for w in _split_words(o.get("f1"))]
    f2 = [parse_word(w, p2.generator_names) for w in _split_words(o.get("f2"))]
    pres = amalgamated_product(p1, p2, a, f1, f2)
    ab = abelianization(pres)
    text = f"{format_presentation(pres)}\nabelianization {ab}"
    return Report(text, {"presentation": format_presentation(pres), "abelianization": ab.to_json(),
                         "abelianization_text": str(ab)})


# --------------------------------------------------------------------------
# Complex commands


def cmd_homology(cfg: RunConfig) -> Report:
    k, rel = load_complex(cfg.inputs[0])
    ring = Coefficients.parse(cfg.options.get("coefficients") or "z")
    use_rel = rel if cfg.options.get("relative") else None
    if cfg.options.get("relative") and rel is None:
        raise ValueError(f"{cfg.inputs[0]} has no relative subcomplex")
    _Stage.name = "chain complex"
    c = build_chain_complex(k, ring, use_rel)
    _Stage.name = "(co)homology"
    rep = cohomology(c) if cfg.options.get("cohomology") else homology(c)
    text = f"f-vector {k.f_vector()}, Euler characteristic {k.euler_characteristic()}\n{rep.to_text()}"
    data = {"f_vector": k.f_vector(), "euler_characteristic": k.euler_characteristic(), **rep.to_json()}
    if cfg.options.get("pair"):
        if rel is None:
            raise ValueError(f"{cfg.inputs[0]} has no relative subcomplex")
        _Stage.name = "pair sequence"
        seq = pair_sequence_check(k, rel, ring)
        text += "\n" + seq.to_text()
        data["pair_sequence"] = seq.to_json()
    return Report(text, data)


def cmd_bockstein(cfg: RunConfig) -> Report:
    k, rel = load_complex(cfg.inputs[0])
    if cfg.options.get("relative") and rel is None:
        raise ValueError(f"{cfg.inputs[0]} has no relative subcomplex")
    use_rel = rel if cfg.options.get("relative") else None
    texts, data = [], []
    for text in cfg.options.get("sequence") or ["integral:2"]:
        _Stage.name = f"coefficient sequence {text}"
        seq = CoefficientSequence.parse(text)
        _Stage.name = f"Bockstein sequence {seq}"
        rep = bockstein_check(k, use_rel, seq)
        texts.append(f"{seq}\n{rep.to_text()}")
        data.append({"sequence": str(seq), **rep.to_json()})
    return Report("\n\n".join(texts), {"results": data})


def cmd_pontryagin(cfg: RunConfig) -> Report:
    o = cfg.options
    n, gens = o.get("triangles") or 1, o.get("generations")
    gens = 2 if gens is None else gens
    primes = o.get("prime") or [2, 3]
    tables = []
    for p in primes:
        _Stage.name = f"fate table mod {p}"
        tables.append(rel_class_fate(n, gens, p, cfg.simplex_cap))
    text = "\n\n".join(t.to_text() for t in tables)
    data = {"tables": [t.to_json() for t in tables]}
    if o.get("export"):
        _Stage.name = f"exporting generation {gens}"
        st = stage(n, gens, cfg.simplex_cap)
        with open(o["export"], "w", encoding="utf-8") as fh:
            json.dump(st.to_json(), fh)
            fh.write("\n")
        text += f"\n\nwrote generation {gens} to {o['export']}"
        data["exported"] = o["export"]
    return Report(text, data)


HANDLERS = {
    "abelianize": cmd_abelianize,
    "enumerate": cmd_enumerate,
    "series": cmd_series,
    "reduce": cmd_reduce,
    "classify13": cmd_classify13,
    "lemma32": cmd_lemma32,
    "amalgam": cmd_amalgam,
    "homology": cmd_homology,
    "bockstein": cmd_bockstein,
    "pontryagin": cmd_pontryagin,
}


def dispatch(cfg: RunConfig) -> tuple[int, str]:
    """Run one command; returns (exit status, text for stdout or stderr)."""
    try:
        return 0, HANDLERS[cfg.command](cfg).render(cfg)
    except ResourceExceeded as exc:
        return 2, f"cohodim {cfg.command}: resource limit during {_Stage.name}: {exc}"
    except (ValueError, OSError, ArithmeticError) as exc:
        return 1, f"cohodim {cfg.command}: error during {_Stage.name}: {exc}"


# --------------------------------------------------------------------------
# Argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env_default(key: str) -> int:
    var, default = ENV_CAPS[key]
    raw = os.environ.get(var)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{var}={raw!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS so a flag given before the subcommand is not reset by the
    # subparser's own default
    quiet = argparse.SUPPRESS
    common.add_argument("--format", choices=("text", "json"), default=quiet, dest="output_format")
    common.add_argument("--max-cosets", type=int, default=quiet,
                        help=f"coset cap (env COHODIM_MAX_COSETS, default {DEFAULT_MAX_COSETS})")
    common.add_argument("--element-cap", type=int, default=quiet,
                        help=f"group element cap (env COHODIM_ELEMENT_CAP, default {DEFAULT_ELEMENT_CAP})")
    common.add_argument("--simplex-cap", type=int, default=quiet,
                        help=f"triangle cap for stages (env COHODIM_SIMPLEX_CAP, default {DEFAULT_SIMPLEX_CAP})")

    parser = _Parser(prog="cohodim", description="Group and cohomology workbench.", parents=[common])
    parser.add_argument("--version", action="version", version=f"cohodim {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def group_cmd(name, help_text):
        sp = sub.add_parser(name, help=help_text, parents=[common])
        sp.add_argument("input", help="presentation file (or corpus name)")
        sp.add_argument("--block", help="named block to use (default: every block)")
        return sp

    group_cmd("abelianize", "abelian invariants of the presented group")
    sp = group_cmd("enumerate", "Todd-Coxeter coset enumeration")
    sp.add_argument("--subgroup", action="append", help="subgroup generator word (repeatable)")
    sp.add_argument("--table", action="store_true", help="also print the coset table as CSV")
    group_cmd("series", "lower central and derived series")
    group_cmd("reduce", "iterated torsion killing")
    group_cmd("classify13", "per-prime torsion and divisibility conditions")
    sp = group_cmd("lemma32", "commutator epimorphism on lower central factors")
    sp.add_argument("--level", type=int, help="single level i (default: every level)")

    sp = sub.add_parser("amalgam", help="amalgamated product of named blocks", parents=[common])
    sp.add_argument("input", help="file with blocks left, right and optionally over")
    sp.add_argument("--left")
    sp.add_argument("--right")
    sp.add_argument("--over")
    sp.add_argument("--f1", action="append", help="images in left, ';'-separated or repeated")
    sp.add_argument("--f2", action="append", help="images in right, ';'-separated or repeated")

    sp = sub.add_parser("homology", help="simplicial (co)homology of a JSON complex", parents=[common])
    sp.add_argument("input")
    sp.add_argument("--coefficients", default="z", help="z, q or z/N")
    sp.add_argument("--relative", action="store_true", help="relative to the stored subcomplex")
    sp.add_argument("--cohomology", action="store_true", help="report cohomology instead")
    sp.add_argument("--pair", action="store_true", help="also check the long exact sequence of the pair")

    sp = sub.add_parser("bockstein", help="check the Bockstein long exact sequence", parents=[common])
    sp.add_argument("input")
    sp.add_argument("--sequence", action="append",
                    help="integral:N, modular:P, or a triple like z,z,z/2 (repeatable)")
    sp.add_argument("--relative", action="store_true")

    sp = sub.add_parser("pontryagin", help="relative H^2 of Pontryagin disk stages", parents=[common])
    sp.add_argument("--triangles", type=int, default=1, help="triangles in the initial disk")
    sp.add_argument("--generations", type=int, default=2)
    sp.add_argument("--prime", type=int, action="append", help="coefficient prime (repeatable)")
    sp.add_argument("--export", help="write the last stage as complex JSON to this path")
    return parser


def parse_config(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if ns.command is None:
        raise UsageError("a command is required: " + ", ".join(COMMANDS))
    opts = {k: v for k, v in vars(ns).items()
            if k not in ("command", "input", "output_format", "max_cosets", "element_cap", "simplex_cap")}
    caps = {key: getattr(ns, key) if hasattr(ns, key) else _env_default(key) for key in ENV_CAPS}
    return RunConfig(
        command=ns.command,
        inputs=[ns.input] if getattr(ns, "input", None) else [],
        output_format=getattr(ns, "output_format", "text"),
        options=opts,
        **caps,
    )


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
    except UsageError as exc:
        print(f"cohodim: {exc}", file=sys.stderr)
        return 1
    status, out = dispatch(cfg)
    print(out, file=sys.stdout if status == 0 else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
