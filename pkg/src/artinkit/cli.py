"""Command-line front end.

Every command prints one JSON document on stdout (or a plain table with
``--format table``). Exit status: 0 success, 1 domain error, 2 resource cap
hit, 3 unparsable graph or word.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import logging
import os
import sys
from dataclasses import fields

from . import monoid as mon
from . import parabolic as par
from . import salvetti as sal
from .config import Caps, DEFAULT_CAPS, active_caps, set_caps
from .coxgraph import CoxeterGraph, connected_components, graph_to_dict, named_graph, parse_graph
from .errors import DomainError, GraphParseError, ResourceCapExceeded, WordParseError
from .sphericity import (
    enumerate_s_lt_inf,
    enumerate_sf,
    is_fc,
    numeric_pd_check,
    enumeration_closes,
    verdict_record,
)
from .topology import euler_characteristic, homology, is_acyclic, order_complex
from .words import (
    enumerate_ball,
    format_word,
    min_coset_rep,
    min_double_coset_rep,
    normal_form,
    parse_word,
)

log = logging.getLogger("artinkit")

EXIT_OK, EXIT_DOMAIN, EXIT_CAP, EXIT_PARSE = 0, 1, 2, 3

COMPLEXES = ("coxeter", "P", "P0", "Pf", "salvetti", "salvetti-level")


# -- input helpers ------------------------------------------------------------

def load_graph(source: str) -> CoxeterGraph:
    """A file path, ``-`` for stdin, a builtin name (A3, I2(5), fig14) or
    the graph document itself."""
    if source == "-":
        return parse_graph(sys.stdin.read())
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    try:
        return named_graph(source)
    except KeyError:
        pass
    if "generators" in source or source.lstrip().startswith("{"):
        return parse_graph(source.replace("\\n", "\n").replace(";", "\n"))
    raise GraphParseError(f"not a file, builtin name or graph document: {source!r}")


def parse_subset(g: CoxeterGraph, text: str | None) -> frozenset:
    if text is None:
        return frozenset()
    out = []
    for tok in text.replace(",", " ").split():
        try:
            out.append(g.index(tok))
        except KeyError:
            raise WordParseError(f"unknown generator {tok!r} in subset {text!r}") from None
    return frozenset(out)


def names(g: CoxeterGraph, X) -> list:
    return [g.generators[i] for i in sorted(X)]


def word_str(g: CoxeterGraph, w) -> str:
    return format_word(g, w) or "1"


def _need(value, flag):
    if value is None:
        raise DomainError(f"{flag} is required for this command")
    return value


def _radius(value, flag="--trunc"):
    if value is None:
        return None
    if value < 0:
        raise DomainError(f"{flag} must be non-negative")
    cap = active_caps().radius
    if value > cap:
        raise ResourceCapExceeded(f"{flag} value", cap)
    return value


# -- commands -----------------------------------------------------------------
# each takes (graph, args) and returns a JSON-ready dict

def cmd_parse(g, a):
    d = graph_to_dict(g)
    d["rank"] = g.rank
    d["components"] = [names(g, c) for c in connected_components(g)]
    return d


def cmd_normal_form(g, a):
    w = normal_form(g, parse_word(g, _need(a.word, "--word")))
    return {"normal_form": word_str(g, w.word), "length": len(w)}


def cmd_word_equal(g, a):
    u = normal_form(g, parse_word(g, _need(a.word, "--word")))
    v = normal_form(g, parse_word(g, _need(a.other, "--other")))
    return {"equal": u == v, "normal_forms": [word_str(g, u.word), word_str(g, v.word)]}


def cmd_length(g, a):
    return {"length": len(normal_form(g, parse_word(g, _need(a.word, "--word"))))}


def cmd_min_rep(g, a):
    w = normal_form(g, parse_word(g, _need(a.word, "--word")))
    X, Y = parse_subset(g, a.left), parse_subset(g, a.right)
    if a.left is not None and a.right is not None:
        r = min_double_coset_rep(X, w, Y)
    elif a.left is not None:
        r = min_coset_rep(w, X, "left")
    else:
        r = min_coset_rep(w, Y, "right")
    return {"rep": word_str(g, r.word), "length": len(r),
            "left": names(g, X) if a.left is not None else None,
            "right": names(g, Y) if a.right is not None else None}


def cmd_ball(g, a):
    r = _radius(_need(a.radius, "--radius"), "--radius")
    elems = enumerate_ball(g, r)
    sizes = [0] * (r + 1)
    for w in elems:
        sizes[len(w)] += 1
    return {"radius": r, "count": len(elems), "sizes_by_length": sizes,
            "elements": [word_str(g, w.word) for w in elems]}


def cmd_sphericity(g, a):
    rec = verdict_record(g)
    if a.cross_check:
        rec["checks"] = {"classification": rec["finite"],
                         "positive_definite": numeric_pd_check(g),
                         "enumeration_closes": enumeration_closes(g, min(a.enum_cap, active_caps().group_order))}
    return rec


def cmd_sf_list(g, a):
    sf = enumerate_sf(g)
    return {"count": len(sf), "subsets": [names(g, X) for X in sf]}


def cmd_fc_check(g, a):
    sf = set(enumerate_sf(g))
    lt = enumerate_s_lt_inf(g)
    return {"fc": is_fc(g), "sf_count": len(sf), "s_lt_inf_count": len(lt),
            "infinite_but_free_of_infinity": [names(g, X) for X in lt if X not in sf]}


def _monoid(g, text):
    return mon.canonicalize(g, parse_word(g, text))


def cmd_monoid_equal(g, a):
    u = _monoid(g, _need(a.word, "--word"))
    v = _monoid(g, _need(a.other, "--other"))
    return {"equal": u == v, "canonical": [word_str(g, u.canon), word_str(g, v.canon)]}


def cmd_monoid_nf(g, a):
    x = _monoid(g, _need(a.word, "--word"))
    return {"canonical": word_str(g, x.canon), "length": len(x), "class_size": len(x.words())}


def _elements_arg(g, a):
    ws = a.element or []
    if not ws:
        raise DomainError("give at least one --element")
    return [_monoid(g, w) for w in ws]


def cmd_meet(g, a):
    m = mon.meet(_elements_arg(g, a), a.side)
    return {"side": a.side, "meet": word_str(g, m.canon)}


def cmd_join(g, a):
    res = mon.join(_elements_arg(g, a), a.side, max_length=_radius(a.max_length, "--max-length"))
    return {"side": a.side, "status": res.status,
            "join": word_str(g, res.element.canon) if res.found else None}


def cmd_delta(g, a):
    d = mon.delta(g)
    perm = mon.delta_automorphism(g)
    return {"delta": word_str(g, d.canon), "length": len(d),
            "automorphism": {g.generators[s]: g.generators[t] for s, t in enumerate(perm)}}


def cmd_end_set(g, a):
    return {"end": names(g, mon.end_set(_monoid(g, _need(a.word, "--word"))))}


def cmd_group_equal(g, a):
    u = mon.parse_signed_word(g, _need(a.word, "--word"))
    v = mon.parse_signed_word(g, a.other or "")
    x = mon.group_normalize(g, u)
    return {"equal": mon.group_equal(g, u, v),
            "normal_form": {"delta_power": -x.k, "positive": word_str(g, x.alpha.canon)}}


def _complex_dict(c):
    d = c.to_dict()
    d["f_vector"] = c.f_vector()
    return d


def cmd_coxeter_complex(g, a):
    return _complex_dict(sal.coxeter_complex(g))


def cmd_coset_poset(g, a):
    p = sal.coset_poset(g, a.variant, _radius(a.trunc))
    return {"variant": a.variant, "size": len(p), **p.to_dict()}


def cmd_salvetti(g, a):
    p = sal.salvetti_poset(g, _radius(a.trunc))
    return {"size": len(p), **p.to_dict()}


def cmd_salvetti_level(g, a):
    c = sal.sal_level(g, _radius(_need(a.n, "--n"), "--n"))
    return {"n": a.n, "vertices": len(c.vertices), "f_vector": c.f_vector(),
            "acyclic": is_acyclic(c, verify=True)}


def cmd_bsal_cells(g, a):
    by_dim = {}
    for X in enumerate_sf(g):
        by_dim.setdefault(len(X), []).append(names(g, X))
    return {"cells": sal.bsal_cells(g), "by_dimension": [by_dim[k] for k in sorted(by_dim)]}


def cmd_presentation(g, a):
    return sal.extract_artin_presentation(g).to_dict()


def cmd_pure_presentation(g, a):
    p = sal.extract_pure_presentation(g)
    rank, torsion = sal.abelianization(p)
    return {**p.to_dict(), "abelianization": {"rank": rank, "torsion": list(torsion)}}


def build_complex(g, a):
    kind = a.complex
    if kind == "coxeter":
        return sal.coxeter_complex(g)
    if kind in ("P", "P0", "Pf"):
        return order_complex(sal.coset_poset(g, kind, _radius(a.trunc)))
    if kind == "salvetti":
        return sal.salvetti_complex(g, _radius(a.trunc))
    return sal.sal_level(g, _radius(_need(a.n, "--n"), "--n"))


def cmd_homology(g, a):
    c = build_complex(g, a)
    h = homology(c, reduced=a.reduced)
    return {"complex": a.complex, "f_vector": c.f_vector(), **h.to_dict(),
            "display": [f"H{x.dim} = {x}" for x in h.groups]}


def cmd_euler(g, a):
    c = build_complex(g, a)
    return {"complex": a.complex, "f_vector": c.f_vector(), "euler": euler_characteristic(c)}


def cmd_retract_check(g, a):
    T = parse_subset(g, a.subset)
    return par.retraction_suite(g, T, _radius(a.trunc)).to_dict(g)


def cmd_fc_decompose(g, a):
    node = par.fc_decomposition(g)
    return {"tree": node.to_dict(g), "leaves": [names(g, x.subset) for x in node.leaves()],
            "all_ok": node.all_ok()}


# name -> (handler, option groups, required top-level keys of the output)
COMMANDS = {
    "parse": (cmd_parse, (), {"generators": list, "edges": list, "rank": int}),
    "normal-form": (cmd_normal_form, ("word",), {"normal_form": str, "length": int}),
    "word-equal": (cmd_word_equal, ("word", "other"), {"equal": bool}),
    "length": (cmd_length, ("word",), {"length": int}),
    "min-rep": (cmd_min_rep, ("word", "sides"), {"rep": str, "length": int}),
    "ball": (cmd_ball, ("radius",), {"radius": int, "count": int, "elements": list}),
    "sphericity": (cmd_sphericity, ("cross",), {"finite": bool, "components": list}),
    "sf-list": (cmd_sf_list, (), {"count": int, "subsets": list}),
    "fc-check": (cmd_fc_check, (), {"fc": bool}),
    "monoid-equal": (cmd_monoid_equal, ("word", "other"), {"equal": bool}),
    "monoid-nf": (cmd_monoid_nf, ("word",), {"canonical": str, "length": int}),
    "meet": (cmd_meet, ("elements", "side"), {"meet": str}),
    "join": (cmd_join, ("elements", "side", "maxlen"), {"status": str}),
    "delta": (cmd_delta, (), {"delta": str, "length": int, "automorphism": dict}),
    "end-set": (cmd_end_set, ("word",), {"end": list}),
    "group-equal": (cmd_group_equal, ("word", "other"), {"equal": bool}),
    "coxeter-complex": (cmd_coxeter_complex, (), {"vertices": list, "maximal_simplices": list}),
    "coset-poset": (cmd_coset_poset, ("variant", "trunc"), {"elements": list, "covers": list}),
    "salvetti": (cmd_salvetti, ("trunc",), {"size": int, "elements": list, "covers": list}),
    "salvetti-level": (cmd_salvetti_level, ("n",), {"f_vector": list, "acyclic": bool}),
    "bsal-cells": (cmd_bsal_cells, (), {"cells": list}),
    "presentation": (cmd_presentation, (), {"generators": list, "relators": list}),
    "pure-presentation": (cmd_pure_presentation, (), {"generators": list, "relators": list,
                                                      "abelianization": dict}),
    "homology": (cmd_homology, ("complex", "trunc", "n", "reduced"), {"groups": list}),
    "euler": (cmd_euler, ("complex", "trunc", "n"), {"euler": int}),
    "retract-check": (cmd_retract_check, ("subset", "trunc"), {"passed": bool}),
    "fc-decompose": (cmd_fc_decompose, (), {"tree": dict, "leaves": list, "all_ok": bool}),
}


def check_output(command: str, doc: dict):
    """Raise AssertionError if doc lacks a documented key or has the wrong type."""
    for key, typ in COMMANDS[command][2].items():
        if key not in doc:
            raise AssertionError(f"{command}: missing output key {key!r}")
        if not isinstance(doc[key], typ):
            raise AssertionError(f"{command}: {key!r} should be {typ.__name__}")


# -- argument parsing ------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--graph", required=True,
                   help="graph file, '-' for stdin, builtin name (A3, B2, I2(5), I2(inf), fig14) or inline document")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress on stderr")
    for f in fields(Caps):
        p.add_argument(f"--cap-{f.name.replace('_', '-')}", dest=f"cap_{f.name}", type=int,
                       metavar="N", help=f"cap on {f.name.replace('_', ' ')} (default {f.default})")
    return p


def _add_group(p: argparse.ArgumentParser, group: str):
    if group == "word":
        p.add_argument("--word", help="space-separated generator names ('1' or '' for identity)")
    elif group == "other":
        p.add_argument("--other", help="second word")
    elif group == "sides":
        p.add_argument("--left", metavar="SUBSET", help="X for a W_X w (or W_X w W_Y) coset")
        p.add_argument("--right", metavar="SUBSET", help="Y for a w W_Y coset")
    elif group == "radius":
        p.add_argument("--radius", type=int)
    elif group == "cross":
        p.add_argument("--cross-check", action="store_true",
                       help="also run the numeric form and enumeration checkers")
        p.add_argument("--enum-cap", type=int, default=500, metavar="N",
                       help="enumeration must close within N elements (default 500)")
    elif group == "elements":
        p.add_argument("--element", action="append", help="a positive word; repeat for each element")
    elif group == "side":
        p.add_argument("--side", choices=(mon.LEFT, mon.RIGHT), default=mon.LEFT)
    elif group == "maxlen":
        p.add_argument("--max-length", type=int, default=12,
                       help="length bound for the common-multiple search")
    elif group == "variant":
        p.add_argument("--variant", choices=("P", "P0", "Pf"), default="P")
    elif group == "trunc":
        p.add_argument("--trunc", type=int, help="keep representatives of length <= N")
    elif group == "n":
        p.add_argument("--n", type=int, help="level of the length filtration")
    elif group == "complex":
        p.add_argument("--complex", choices=COMPLEXES, required=True)
    elif group == "reduced":
        p.add_argument("--reduced", action="store_true")
    elif group == "subset":
        p.add_argument("--subset", default="", help="generator names of T, comma or space separated")
    else:
        raise ValueError(group)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artinkit", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = _common()
    for name, (handler, groups, _) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=(handler.__doc__ or "").strip() or None)
        for grp in groups:
            _add_group(p, grp)
    return parser


# -- output ------------------------------------------------------------------------

def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)
    rows = []
    width = max((len(k) for k in doc), default=0)
    for k in sorted(doc):
        v = doc[k]
        if isinstance(v, str):
            text = v
        else:
            text = json.dumps(v, sort_keys=True, ensure_ascii=False)
        rows.append(f"{k.ljust(width)}  {text}")
    return "\n".join(rows)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(stderr), contextlib.redirect_stdout(stdout):
            args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse usage errors count as parse errors
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    logging.basicConfig(stream=stderr, level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    overrides = {f.name: getattr(args, f"cap_{f.name}") for f in fields(Caps)
                 if getattr(args, f"cap_{f.name}") is not None}
    previous = set_caps(DEFAULT_CAPS, **overrides)
    handler = COMMANDS[args.command][0]
    try:
        g = load_graph(args.graph)
        log.info("graph with %d generators; running %s", g.rank, args.command)
        doc = handler(g, args)
        check_output(args.command, doc)
    except (GraphParseError, WordParseError) as exc:
        print(f"parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except ResourceCapExceeded as exc:
        print(f"resource cap: {exc}", file=stderr)
        return EXIT_CAP
    except DomainError as exc:
        print(f"domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    finally:
        set_caps(previous)
    print(render(doc, args.format), file=stdout)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
