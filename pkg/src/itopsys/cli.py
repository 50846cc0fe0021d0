"""Command-line interface.

Exit status: 0 when the outcome is ok/true, 1 when it is fail/false (with
findings), 2 on malformed input.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Any, Callable

import click

from . import io
from .duality import (
    dualize_hom,
    is_forest,
    roundtrip_algebra,
    roundtrip_poset,
    spectrum,
    upset_algebra,
)
from .errors import (
    FormulaSyntaxError,
    InputError,
    ItopsysError,
    UnknownAtom,
    UnknownElement,
    UnknownWorld,
)
from .formula import parse_formula, pretty
from .kripke import countermodel_search, forces, model_from_system
from .lattice import (
    HEYTING,
    HeytingAlgebra,
    HomCandidate,
    build_lattice,
    check_hom,
    is_goedel,
    negation,
    residuate,
)
from .posets import FinitePoset
from .topsys import (
    ITopSystem,
    canonical_system,
    check_axioms,
    check_morphism,
    classify_system,
    unit_and_triangle,
)

INPUT_ERRORS = (InputError, UnknownElement, UnknownWorld, UnknownAtom, FormulaSyntaxError)


@dataclass
class Report:
    verb: str
    ok: bool
    findings: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "ok" if self.ok else "fail"

    def to_json(self) -> str:
        return io.dumps({"verb": self.verb, "status": self.status, "findings": self.findings})

    def to_text(self) -> str:
        lines = [f"{self.verb}: {self.status}"]
        for key, value in self.findings.items():
            if isinstance(value, dict):
                lines.append(f"{key}:")
                lines.extend(f"  {k}: {_flat(v)}" for k, v in value.items())
            elif isinstance(value, list) and value and isinstance(value[0], (list, dict)):
                lines.append(f"{key}:")
                lines.extend(f"  - {_flat(v)}" for v in value)
            elif isinstance(value, str) and "\n" in value:
                lines.append(value.rstrip("\n"))
            else:
                lines.append(f"{key}: {_flat(value)}")
        return "\n".join(lines) + "\n"


def _flat(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in v.items()) + "}"
    if v is None:
        return "null"
    return str(v)


def _failure(verb: str, exc: ItopsysError) -> Report:
    return Report(verb, False, {"error": type(exc).__name__, "message": str(exc),
                                "witness": [str(w) for w in exc.witness]})


def _emit(ctx: click.Context, report: Report | str) -> None:
    fmt = ctx.obj.get("format", "text")
    out = ctx.obj.get("out")
    if isinstance(report, str):
        text = report
    else:
        text = report.to_json() if fmt == "json" else report.to_text()
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def verb(name: str):
    """Register a subcommand whose body returns a Report (or DOT text)."""

    def deco(fn: Callable[..., Report | str]):
        @cli.command(name)
        @click.option("--format", "fmt", type=click.Choice(["json", "text"]), default=None,
                      help="Report rendering (default text).")
        @click.option("--out", type=click.Path(dir_okay=False), default=None,
                      help="Write the report to PATH instead of stdout.")
        @click.pass_context
        def command(ctx, fmt, out, **kwargs):
            if fmt:
                ctx.obj["format"] = fmt
            if out:
                ctx.obj["out"] = out
            try:
                report = fn(**kwargs)
            except INPUT_ERRORS as exc:
                click.echo(f"input error: {exc}", err=True)
                ctx.exit(2)
            except ItopsysError as exc:
                report = _failure(name, exc)
            _emit(ctx, report)
            ctx.exit(0 if isinstance(report, str) or report.ok else 1)

        command.__doc__ = fn.__doc__
        command.__name__ = fn.__name__
        # click.argument/option decorators applied to fn are transferred here
        command.params.extend(getattr(fn, "__click_params__", [])[::-1])
        return command

    return deco


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text",
              help="Report rendering for all subcommands.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def cli(ctx, fmt, out):
    """Finite Heyting algebras, their spectra, I-topological systems and Kripke models."""
    ctx.ensure_object(dict)
    ctx.obj["format"] = fmt
    ctx.obj["out"] = out


def _algebra(path: str) -> HeytingAlgebra:
    return io.algebra_from_json(io.load_json(path))


def _poset(path: str) -> FinitePoset:
    return io.poset_from_json(io.load_json(path))


def _system(path: str) -> ITopSystem:
    return io.system_from_json(io.load_json(path))


def _table(A: HeytingAlgebra, table) -> dict:
    return {A.names[a]: {A.names[b]: A.names[table[a][b]] for b in range(len(A))}
            for a in range(len(A))}


@verb("validate-lattice")
@click.argument("lattice", type=click.Path())
def validate_lattice(lattice):
    """Check that LATTICE is a bounded distributive lattice."""
    L = build_lattice(io.lattice_spec_from_json(io.load_json(lattice)))
    H = residuate(L)
    return Report("validate-lattice", True, {
        "elements": list(L.names),
        "covers": [[L.names[x], L.names[y]] for x, y in L.covers()],
        "bottom": L.names[L.bottom],
        "top": L.names[L.top],
        "goedel": bool(is_goedel(H)),
    })


@verb("residuate")
@click.argument("lattice", type=click.Path())
def residuate_cmd(lattice):
    """Print the implication table and negations of LATTICE."""
    A = _algebra(lattice)
    goedel = is_goedel(A)
    findings = {
        "implication": _table(A, A.imp),
        "negation": {a: A.names[negation(A, a)] for a in A.names},
        "goedel": bool(goedel),
    }
    if not goedel:
        findings["prelinearity_witness"] = list(goedel.witness)
    return Report("residuate", True, findings)


@verb("spectrum")
@click.argument("lattice", type=click.Path())
def spectrum_cmd(lattice):
    """List the homs LATTICE -> {0,1}, their order and prime filters."""
    A = _algebra(lattice)
    S = spectrum(A)
    doc = io.spectrum_to_json(S)
    heyting = {}
    for name, h in zip(S.names, S.homs):
        verdict = check_hom(h.as_hom(), HEYTING)
        heyting[name] = True if verdict else [verdict.witness.law, *verdict.witness.args]
    return Report("spectrum", True, {
        "homs": doc["bits"],
        "order": doc["leq"],
        "filters": doc["filters"],
        "heyting": heyting,
    })


@verb("dualize")
@click.argument("source", type=click.Path())
@click.argument("target", type=click.Path())
@click.argument("mapping", type=click.Path())
def dualize(source, target, mapping):
    """Dual spectrum map of the Heyting hom SOURCE -> TARGET given by MAPPING."""
    B, A = _algebra(source), _algebra(target)
    raw = io.load_json(mapping)
    if not isinstance(raw, dict):
        raise InputError("mapping must be a JSON object {source element: target element}")
    f = HomCandidate.from_names(B, A, raw)
    d = dualize_hom(f)
    return Report("dualize", d.monotone and d.p_morphism, {
        "map": {d.source.names[i]: d.target.names[j] for i, j in enumerate(d.mapping)},
        "monotone": d.monotone,
        "p_morphism": d.p_morphism,
        "failures": [list(x) for x in d.failures],
    })


@verb("upset-algebra")
@click.argument("poset", type=click.Path())
def upset_algebra_cmd(poset):
    """The Heyting algebra of up-sets of POSET."""
    A = upset_algebra(_poset(poset))
    doc = io.lattice_to_json(A)
    return Report("upset-algebra", True, {"elements": doc["elements"], "covers": doc["covers"],
                                          "implication": _table(A, A.imp)})


@verb("roundtrip")
@click.option("--poset", type=click.Path(), default=None)
@click.option("--lattice", type=click.Path(), default=None)
def roundtrip(poset, lattice):
    """Check P ≅ spectrum(up-sets(P)) or A ≅ up-sets(spectrum(A))."""
    if (poset is None) == (lattice is None):
        raise InputError("give exactly one of --poset or --lattice")
    if poset is not None:
        P = _poset(poset)
        iso = roundtrip_poset(P)
        names = iso.target.names
        fwd = {P.names[x]: names[i] for x, i in enumerate(iso.forward)}
        return Report("roundtrip", True, {"kind": "order", "forward": fwd})
    A = _algebra(lattice)
    iso = roundtrip_algebra(A)
    fwd = {A.names[a]: iso.target.names[b] for a, b in enumerate(iso.forward)}
    return Report("roundtrip", True, {"kind": "heyting", "forward": fwd})


@verb("is-forest")
@click.argument("poset", type=click.Path())
def is_forest_cmd(poset):
    """Is every principal up-set of POSET a chain?"""
    v = is_forest(_poset(poset))
    return Report("is-forest", v.ok, {"forest": v.ok, "witness": list(v.witness)})


@verb("validate-system")
@click.argument("system", type=click.Path())
def validate_system(system):
    """Check the satisfaction axioms of SYSTEM."""
    doc = io.load_json(system)
    A = io.algebra_from_json(doc.get("lattice") if isinstance(doc, dict) else None)
    points = doc.get("points", [])
    sat_sets = doc.get("sat", {})
    if not isinstance(points, list) or not isinstance(sat_sets, dict):
        raise InputError("system needs 'points' (list) and 'sat' (object)")
    sat = [[A.names[a] in set(sat_sets.get(p, ())) for a in range(len(A))] for p in points]
    for p, elems in sat_sets.items():
        if p not in points:
            raise InputError(f"'sat' mentions unknown point {p!r}")
        for a in elems:
            A.index(a)
    violations = check_axioms(points, A, sat)
    return Report("validate-system", not violations, {
        "points": len(points),
        "violations": [[v.axiom, v.point, *v.elements] for v in violations],
    })


@verb("classify")
@click.argument("system", type=click.Path())
def classify(system):
    """Heyting-algebraic, Gödel-algebraic and T0 flags of SYSTEM."""
    c = classify_system(_system(system))
    return Report("classify", True, {"heyting_algebraic": c.heyting_algebraic,
                                     "goedel_algebraic": c.goedel_algebraic,
                                     "t0": c.t0})


@verb("canonical")
@click.argument("lattice", type=click.Path())
def canonical(lattice):
    """The canonical system on the spectrum of LATTICE."""
    S = canonical_system(_algebra(lattice))
    doc = io.system_to_json(S)
    return Report("canonical", True, {"points": doc["points"], "sat": doc["sat"]})


@verb("check-morphism")
@click.argument("source", type=click.Path())
@click.argument("target", type=click.Path())
@click.argument("morphism", type=click.Path())
def check_morphism_cmd(source, target, morphism):
    """Continuity of MORPHISM between the systems SOURCE and TARGET."""
    S, T = _system(source), _system(target)
    m = io.morphism_from_json(io.load_json(morphism), S, T)
    v = check_morphism(m)
    return Report("check-morphism", v.ok, {"violations": [list(x) for x in v.violations]})


@verb("unit-check")
@click.argument("system", type=click.Path())
@click.argument("lattice", type=click.Path())
@click.argument("morphism", type=click.Path())
def unit_check(system, lattice, morphism):
    """Factor MORPHISM: SYSTEM -> canonical(LATTICE) through the unit."""
    S = _system(system)
    T = canonical_system(_algebra(lattice))
    m = io.morphism_from_json(io.load_json(morphism), S, T)
    r = unit_and_triangle(S, m)
    return Report("unit-check", r.commutes and r.unique is not False, {
        "commutes": r.commutes,
        "unique": "not checked" if r.unique is None else r.unique,
        "f_hat": r.f_hat.as_names(),
        "eta": {S.points[x]: T.points[y] for x, y in enumerate(r.eta.f1)},
        "unit_is_isomorphism": r.unit_is_isomorphism,
    })


@verb("to-kripke")
@click.argument("system", type=click.Path())
def to_kripke(system):
    """The Kripke model induced by SYSTEM."""
    M = model_from_system(_system(system))
    return Report("to-kripke", True, io.model_to_json(M))


@verb("eval")
@click.argument("model", type=click.Path())
@click.argument("world")
@click.argument("formula")
def eval_cmd(model, world, formula):
    """Does WORLD force FORMULA in MODEL?"""
    M = io.model_from_json(io.load_json(model))
    f = parse_formula(formula)
    result = forces(M, world, f)
    return Report("eval", result, {"world": world, "formula": pretty(f), "forces": result})


@verb("countermodel")
@click.argument("formula")
@click.option("--max-size", type=click.IntRange(min=1), default=4, show_default=True)
def countermodel(formula, max_size):
    """Search for a refuting Kripke model; ok means none up to --max-size worlds."""
    f = parse_formula(formula)
    hit = countermodel_search(f, max_size)
    if hit is None:
        return Report("countermodel", True, {"formula": pretty(f), "max_size": max_size,
                                             "countermodel": None})
    return Report("countermodel", False, {"formula": pretty(f), "max_size": max_size,
                                          "countermodel": io.model_to_json(hit.model),
                                          "world": hit.world})


@verb("export-dot")
@click.argument("path", type=click.Path())
@click.option("--spectrum", "as_spectrum", is_flag=True,
              help="Draw the spectrum of a lattice file instead of the lattice.")
def export_dot_cmd(path, as_spectrum):
    """Hasse diagram of a lattice, poset or frame in DOT."""
    obj = io.load(path)
    if as_spectrum:
        if not isinstance(obj, HeytingAlgebra):
            raise InputError("--spectrum needs a lattice file")
        obj = spectrum(obj).poset
    if isinstance(obj, ITopSystem):
        raise InputError("export-dot takes a lattice, poset or model file")
    return export_dot(obj)


def export_dot(obj) -> str:
    """Cover relation as a DOT digraph, nodes and edges in canonical order."""
    from .kripke import KripkeModel

    if isinstance(obj, HeytingAlgebra):
        obj = obj.lattice
    if isinstance(obj, KripkeModel):
        kind, names, covers = "frame", obj.frame.names, obj.frame.covers()
    elif isinstance(obj, FinitePoset):
        kind, names, covers = "poset", obj.names, obj.covers()
    else:
        kind, names, covers = "lattice", obj.names, obj.covers()
    lines = [f"digraph {kind} {{", "  rankdir=BT;"]
    lines.extend(f'  "{_esc(x)}";' for x in names)
    lines.extend(f'  "{_esc(names[x])}" -> "{_esc(names[y])}";' for x, y in covers)
    lines.append("}")
    return "\n".join(lines) + "\n"


def _esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def main(argv: list[str] | None = None) -> int:
    try:
        rc = cli.main(args=argv, prog_name="itopsys", standalone_mode=False, obj={})
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 2
    except click.exceptions.Abort:
        return 2
    return rc if isinstance(rc, int) else 0


if __name__ == "__main__":
    sys.exit(main())
