"""Command line front end.

Three subcommands:

* ``chevalley`` -- fixed-w Chevalley rows (all three models, cross-checked
  when ``--model all``), or the fixed-z expansion in the alcove model when
  ``--z``/``--max-length`` are given;
* ``crystal`` -- a Demazure (or opposite Demazure) set in both of its
  realizations, cross-checked, emitting the one picked by ``--realization``;
* ``selftest`` -- a scenario matrix of internal cross-checks, including a
  negative control that flips the lex comparator and must disagree.

Output formats: ``json`` (stable schema, deterministic ordering), ``table``
(human-readable), ``dot`` (trees / crystal graphs).  Exit status is nonzero
when a requested cross-check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import alcove, kring, lspath
from .cartan import Realization, Weight, is_lattice, realization_from_json_file, realization_from_preset, wt_neg
from .weyl import WeylElt, WeylGroup


class CLIError(Exception):
    pass


@dataclass
class JobConfig:
    cartan: str | None = None
    gcm_file: str | None = None
    weight: str = ""
    sign: int = 1
    model: str = "all"
    w: str | None = None
    z: str | None = None
    max_length: int | None = None
    fmt: str = "json"
    out: str | None = None
    opposite: bool = False
    realization: str = "ls"
    scenario: str | None = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "JobConfig":
        sign = {"+1": 1, "+": 1, "-1": -1, "-": -1}.get(getattr(ns, "sign", "+1"))
        if sign is None:
            raise CLIError(f"--sign must be +1 or -1, not {ns.sign!r}")
        return cls(
            cartan=getattr(ns, "cartan", None),
            gcm_file=getattr(ns, "gcm_file", None),
            weight=getattr(ns, "weight", "") or "",
            sign=sign,
            model=getattr(ns, "model", "all"),
            w=getattr(ns, "w", None),
            z=getattr(ns, "z", None),
            max_length=getattr(ns, "max_length", None),
            fmt=getattr(ns, "format", "json"),
            out=getattr(ns, "out", None),
            opposite=getattr(ns, "opposite", False),
            realization=getattr(ns, "realization", "ls"),
            scenario=getattr(ns, "scenario", None),
        )

    def build_realization(self) -> Realization:
        if self.gcm_file and self.cartan:
            raise CLIError("give either --cartan or --gcm-file, not both")
        if self.gcm_file:
            return realization_from_json_file(self.gcm_file)
        if self.cartan:
            return realization_from_preset(self.cartan)
        raise CLIError("a Cartan matrix is required (--cartan or --gcm-file)")


def parse_word(R: Realization, text: str) -> tuple:
    toks = text.split()
    if toks == ["e"] or not toks:
        return ()
    index = {name: i for i, name in enumerate(R.node_names)}
    try:
        return tuple(index[t] for t in toks)
    except KeyError as exc:
        raise CLIError(f"unknown node name {exc.args[0]!r}; nodes are {R.node_names}") from None


def parse_lam(R: Realization, text: str | None) -> Weight:
    if text is None:
        raise CLIError("a --weight is required")
    try:
        return R.parse_weight(text)
    except ValueError as exc:
        raise CLIError(str(exc)) from None


def weight_obj(R: Realization, mu: Weight) -> dict:
    assert is_lattice(mu)
    corank = R.N - R.n
    if corank == 0:
        return {"fund": [int(x) for x in mu]}
    if corank == 1:
        return {"fund": [int(x) for x in mu[: R.n]], "delta": int(mu[R.n])}
    raise CLIError("JSON output supports corank <= 1 realizations only")


def word_obj(R: Realization, w: WeylElt) -> list:
    return [R.node_names[i] for i in w.word]


def poly_terms(R: Realization, poly) -> list:
    return [{"weight": weight_obj(R, mu), "mult": poly[mu]} for mu in sorted(poly)]


def poly_str(R: Realization, poly) -> str:
    if not poly:
        return "0"
    parts = []
    for mu in sorted(poly):
        c = poly[mu]
        coef = "" if c == 1 else ("-" if c == -1 else f"{c}*")
        term = f"{coef}e[{R.format_weight(mu)}]"
        if parts and not term.startswith("-"):
            term = "+" + term
        parts.append(term)
    return " ".join(parts)


def emit(cfg: JobConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


# -- chevalley ---------------------------------------------------------------


def _rows_for_model(model: str, R: Realization, lam: Weight, sign: int, word: tuple):
    """Each worker gets a private WeylGroup so caches never race."""
    W = WeylGroup(R)
    w = W.from_word(word)
    if model == "nilhecke":
        rows = kring.chevalley_recurrence(W, w, lam if sign > 0 else wt_neg(lam))
        return {z: p for z, p in rows.items() if p}
    if model == "ls":
        fn = lspath.chevalley_dominant_ls if sign > 0 else lspath.chevalley_antidominant_ls
        return fn(W, lam, w)
    if model == "alcove":
        fn = alcove.chevalley_dominant_alcove if sign > 0 else alcove.chevalley_antidominant_alcove
        return fn(W, lam, w)
    raise CLIError(f"unknown model {model!r}")


def _rows_diff(rows_by_model: dict) -> list:
    """Structured per-z differences between models (empty when all agree)."""
    names = sorted(rows_by_model)
    all_z = sorted({z for rows in rows_by_model.values() for z in rows}, key=lambda u: u.key)
    diffs = []
    for z in all_z:
        polys = {name: rows_by_model[name].get(z, {}) for name in names}
        if len({tuple(sorted(p.items())) for p in polys.values()}) > 1:
            diffs.append((z, polys))
    return diffs


def cmd_chevalley(cfg: JobConfig) -> int:
    R = cfg.build_realization()
    W = WeylGroup(R)
    lam = parse_lam(R, cfg.weight)
    if not R.is_dominant(lam):
        raise CLIError(f"weight {cfg.weight!r} is not dominant")

    if cfg.z is not None or cfg.max_length is not None:
        return _chevalley_fixed_z(cfg, R, W, lam)

    if cfg.w is None:
        raise CLIError("chevalley needs --w (or --z with --max-length)")
    word = parse_word(R, cfg.w)
    w = W.from_word(word)

    models = ["ls", "alcove", "nilhecke"] if cfg.model == "all" else [cfg.model]
    if cfg.model == "all":
        with ThreadPoolExecutor(max_workers=3) as pool:
            futures = {m: pool.submit(_rows_for_model, m, R, lam, cfg.sign, word) for m in models}
            rows_by_model = {m: fut.result() for m, fut in futures.items()}
    else:
        rows_by_model = {cfg.model: _rows_for_model(cfg.model, R, lam, cfg.sign, word)}

    diffs = _rows_diff(rows_by_model)
    if diffs:
        report = {
            "error": "models disagree",
            "disagreements": [
                {
                    "z": word_obj(R, z),
                    "models": {name: poly_terms(R, poly) for name, poly in sorted(polys.items())},
                }
                for z, polys in diffs
            ],
        }
        emit(cfg, json.dumps(report, indent=2))
        return 1

    rows = rows_by_model[models[0]]
    if cfg.fmt == "json":
        doc = {
            "cartan": R.gcm.to_json(),
            "lambda": weight_obj(R, lam),
            "sign": cfg.sign,
            "w": word_obj(R, w),
            "rows": [
                {"z": word_obj(R, z), "terms": poly_terms(R, rows[z])}
                for z in sorted(rows, key=lambda u: u.key)
            ],
            "truncated": False,
        }
        emit(cfg, json.dumps(doc, indent=2))
    elif cfg.fmt == "table":
        lines = [f"[L^{'+' if cfg.sign > 0 else '-'}({R.format_weight(lam)})] * [O_{w!r}]"]
        for z in sorted(rows, key=lambda u: u.key):
            lines.append(f"  [O_{z!r}] : {poly_str(R, rows[z])}")
        emit(cfg, "\n".join(lines))
    elif cfg.fmt == "dot":
        if cfg.model not in ("alcove", "all"):
            raise CLIError("--format dot for chevalley requires the alcove model")
        seqs = (alcove.enumerate_tree_dominant if cfg.sign > 0 else alcove.enumerate_tree_antidominant)(W, lam, w)
        emit(cfg, alcove.tree_dot(W, lam, seqs))
    else:
        raise CLIError(f"unknown format {cfg.fmt!r}")
    return 0


def _chevalley_fixed_z(cfg: JobConfig, R: Realization, W: WeylGroup, lam: Weight) -> int:
    if cfg.z is None or cfg.max_length is None:
        raise CLIError("fixed-z mode needs both --z and --max-length")
    if cfg.model not in ("alcove",):
        raise CLIError("fixed-z mode is supported by the alcove model only (--model alcove)")
    z = W.from_word(parse_word(R, cfg.z))
    mono = "inc" if cfg.sign > 0 else "dec"
    seqs, truncated = alcove.enumerate_z_adapted(W, lam, z, mono, cfg.max_length)
    rows: dict[WeylElt, dict] = {}
    for seq in seqs:
        wt = alcove.wt_inc(W, lam, seq) if cfg.sign > 0 else wt_neg(alcove.wt_dec(W, lam, seq))
        sign = 1 if cfg.sign > 0 else (-1 if len(seq.hs) % 2 else 1)
        kring.lp_add_into(rows.setdefault(seq.end, {}), kring.lp_monomial(wt, sign))
    rows = {w: p for w, p in rows.items() if p}
    if cfg.fmt == "json":
        doc = {
            "cartan": R.gcm.to_json(),
            "lambda": weight_obj(R, lam),
            "sign": cfg.sign,
            "z": word_obj(R, z),
            "rows": [
                {"w": word_obj(R, w), "terms": poly_terms(R, rows[w])}
                for w in sorted(rows, key=lambda u: u.key)
            ],
            "truncated": truncated,
        }
        emit(cfg, json.dumps(doc, indent=2))
    elif cfg.fmt == "table":
        head = f"[L^{'+' if cfg.sign > 0 else '-'}({R.format_weight(lam)})] * [O_{z!r}], lengths <= {cfg.max_length}"
        lines = [head + ("  (truncated)" if truncated else "")]
        for w in sorted(rows, key=lambda u: u.key):
            lines.append(f"  [O_{w!r}] : {poly_str(R, rows[w])}")
        emit(cfg, "\n".join(lines))
    else:
        raise CLIError("fixed-z mode emits json or table")
    return 0


# -- crystal -----------------------------------------------------------------


def cmd_crystal(cfg: JobConfig) -> int:
    R = cfg.build_realization()
    W = WeylGroup(R)
    lam = parse_lam(R, cfg.weight)
    if not R.is_dominant(lam):
        raise CLIError(f"weight {cfg.weight!r} is not dominant")

    if cfg.opposite:
        if cfg.z is None or cfg.max_length is None:
            raise CLIError("--opposite needs --z and --max-length")
        z = W.from_word(parse_word(R, cfg.z))
        paths, trunc_ls = lspath.opposite_demazure_ls(W, lam, z, cfg.max_length)
        raw, trunc_alc = alcove.opposite_demazure_alcove(W, lam, z, cfg.max_length)
        seqs = [s for s in raw if s.end.length <= cfg.max_length]
        wts_ls = sorted(lspath.endpoint(W, p) for p in paths)
        wts_alc = sorted(alcove.wt_inc(W, lam, s) for s in seqs)
        truncated = trunc_ls or trunc_alc
    else:
        if cfg.w is None:
            raise CLIError("crystal needs --w (or --opposite with --z)")
        w = W.from_word(parse_word(R, cfg.w))
        paths = lspath.demazure_crystal(W, lam, w)
        seqs = alcove.demazure_alcove(W, lam, w)
        wts_ls = sorted(lspath.endpoint(W, p) for p in paths)
        wts_alc = sorted(alcove.wt_dec(W, lam, s) for s in seqs)
        truncated = False

    if len(paths) != len(seqs) or wts_ls != wts_alc:
        report = {
            "error": "realizations disagree",
            "ls_count": len(paths),
            "alcove_count": len(seqs),
            "ls_weights": [weight_obj(R, m) for m in wts_ls],
            "alcove_weights": [weight_obj(R, m) for m in wts_alc],
        }
        emit(cfg, json.dumps(report, indent=2))
        return 1

    ordered_paths = sorted(paths, key=lspath.path_key)
    if cfg.fmt == "json":
        if cfg.realization == "ls":
            items = [
                {
                    "b": [str(x) for x in p.b],
                    "dirs": [word_obj(R, d) for d in p.dirs],
                    "weight": weight_obj(R, lspath.endpoint(W, p)),
                }
                for p in ordered_paths
            ]
        else:
            items = [
                {
                    "z": word_obj(R, s.z),
                    "labels": [alcove.format_hyperplane(lam, h) for h in s.hs],
                    "weight": weight_obj(R, alcove.wt_dec(W, lam, s) if not cfg.opposite else alcove.wt_inc(W, lam, s)),
                }
                for s in seqs
            ]
        doc = {
            "cartan": R.gcm.to_json(),
            "lambda": weight_obj(R, lam),
            "realization": cfg.realization,
            "count": len(items),
            "elements": items,
            "truncated": truncated,
        }
        emit(cfg, json.dumps(doc, indent=2))
    elif cfg.fmt == "table":
        lines = [f"{len(ordered_paths)} elements" + ("  (truncated)" if truncated else "")]
        if cfg.realization == "ls":
            for p in ordered_paths:
                lines.append(f"  {p!r}  wt={R.format_weight(lspath.endpoint(W, p))}")
        else:
            for s in seqs:
                labels = ",".join(alcove.format_hyperplane(lam, h) for h in s.hs)
                wt = alcove.wt_dec(W, lam, s) if not cfg.opposite else alcove.wt_inc(W, lam, s)
                lines.append(f"  {s.z!r} [{labels}]  wt={R.format_weight(wt)}")
        emit(cfg, "\n".join(lines))
    elif cfg.fmt == "dot":
        if cfg.realization == "ls":
            emit(cfg, lspath.crystal_dot(W, ordered_paths))
        else:
            if cfg.opposite:
                raise CLIError("dot output for the alcove realization covers --w crystals only")
            emit(cfg, alcove.tree_dot(W, lam, seqs))
    else:
        raise CLIError(f"unknown format {cfg.fmt!r}")
    return 0


# -- selftest ----------------------------------------------------------------


def _triangle(preset: str, lamtext: str, wtext: str, sign: int) -> str | None:
    R = realization_from_preset(preset)
    lam = R.parse_weight(lamtext)
    word = parse_word(R, wtext)
    rows = {m: _rows_for_model(m, R, lam, sign, word) for m in ("ls", "alcove", "nilhecke")}
    diffs = _rows_diff(rows)
    if diffs:
        return f"{len(diffs)} rows disagree (first at z={diffs[0][0]!r})"
    return None


def _scn_finite_triangles() -> str | None:
    for preset, lamtext, words in [
        ("A2", "1,1", ["e", "1", "2 1", "1 2 1"]),
        ("B2", "1,2", ["2 1", "1 2 1", "2 1 2 1"]),
    ]:
        for wtext in words:
            for sign in (1, -1):
                bad = _triangle(preset, lamtext, wtext, sign)
                if bad:
                    return f"{preset} lam={lamtext} w={wtext} sign={sign}: {bad}"
    return None


def _scn_affine_triangle() -> str | None:
    for sign in (1, -1):
        bad = _triangle("A2~", "1,1,0", "0 1 2 1", sign)
        if bad:
            return f"A2~ sign={sign}: {bad}"
    return None


def _scn_bijections() -> str | None:
    R = realization_from_preset("A2")
    W = WeylGroup(R)
    lam = R.parse_weight("1,1")
    w = W.from_word((0, 1, 0))
    for seq in alcove.enumerate_tree_dominant(W, lam, w):
        p = alcove.inc_to_ls(W, lam, seq)
        if alcove.ls_to_inc(W, p, seq.z) != seq:
            return f"inc round-trip failed at {seq!r}"
    for seq in alcove.enumerate_tree_antidominant(W, lam, w):
        p = alcove.dec_to_ls(W, lam, seq)
        if alcove.ls_to_dec(W, p, w) != seq:
            return f"dec round-trip failed at {seq!r}"
    return None


def _scn_chain_axioms() -> str | None:
    for preset, lamtext in [("A2", "1,1"), ("A2", "2,1"), ("B2", "1,1"), ("G2", "1,0")]:
        R = realization_from_preset(preset)
        lam = R.parse_weight(lamtext)
        ok, why = alcove.validate_lambda_chain_finite(R, lam, alcove.lex_chain(R, lam))
        if not ok:
            return f"{preset} lam={lamtext}: {why}"
    return None


def _scn_crystal_mass() -> str | None:
    R = realization_from_preset("A2")
    W = WeylGroup(R)
    lam = R.parse_weight("2,1")
    paths = lspath.demazure_crystal(W, lam, W.from_word((0, 1, 0)))
    if len(paths) != 15:
        return f"expected 15 elements in the full crystal, got {len(paths)}"
    return None


def _scn_negative_control() -> str | None:
    """With the lex comparator inverted the alcove model must disagree."""
    with alcove.inverted_lex():
        bad = _triangle("A2~", "1,1,0", "0 1 2 1", 1)
    if bad is None:
        return "inverted lex comparator went undetected"
    return None


SCENARIOS = [
    ("finite-triangles", _scn_finite_triangles),
    ("affine-triangle", _scn_affine_triangle),
    ("bijection-roundtrip", _scn_bijections),
    ("chain-axioms", _scn_chain_axioms),
    ("crystal-mass", _scn_crystal_mass),
    ("negative-control", _scn_negative_control),
]


def cmd_selftest(cfg: JobConfig) -> int:
    if cfg.scenario is None:
        selected = SCENARIOS
    elif cfg.scenario == "":
        selected = []
    else:
        selected = [(n, fn) for n, fn in SCENARIOS if cfg.scenario in n]
    results = []
    for name, fn in selected:
        try:
            detail = fn()
        except Exception as exc:  # a crashed scenario is a failed scenario
            detail = f"exception: {exc!r}"
        results.append({"name": name, "ok": detail is None, "detail": detail or "pass"})
    doc = {"scenarios": results, "all_ok": all(r["ok"] for r in results)}
    emit(cfg, json.dumps(doc, indent=2))
    return 0 if doc["all_ok"] else 1


# -- entry point ---------------------------------------------------------------


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--cartan", help="preset name (A1, A2, A3, B2, G2, A1~, A2~)")
    sp.add_argument("--gcm-file", help="JSON file with a Cartan matrix")
    sp.add_argument("--weight", help='dominant weight "c_0,c_1,...[,delta=q]"')
    sp.add_argument("--format", choices=("json", "table", "dot"), default="json")
    sp.add_argument("--out", help="write output to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kmchev")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("chevalley", help="Chevalley coefficient rows")
    _add_common(sp)
    sp.add_argument("--sign", default="+1", help="+1 for the dominant line bundle, -1 for its dual")
    sp.add_argument("--model", choices=("ls", "alcove", "nilhecke", "all"), default="all")
    sp.add_argument("--w", help='fixed w as space-separated node names ("e" for the identity)')
    sp.add_argument("--z", help="fixed z (alcove-only expansion over w)")
    sp.add_argument("--max-length", type=int, help="length bound for the fixed-z expansion")

    sp = sub.add_parser("crystal", help="Demazure / opposite Demazure sets")
    _add_common(sp)
    sp.add_argument("--w", help="Demazure crystal of this element")
    sp.add_argument("--opposite", action="store_true", help="opposite Demazure set over --z")
    sp.add_argument("--z", help="base element for --opposite")
    sp.add_argument("--max-length", type=int, help="length bound for --opposite")
    sp.add_argument("--realization", choices=("ls", "alcove"), default="ls")

    sp = sub.add_parser("selftest", help="internal cross-check scenarios")
    sp.add_argument("--scenario", help="substring filter; empty string selects nothing")
    sp.add_argument("--out", help="write the report to this file")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = JobConfig.from_args(ns)
        if ns.command == "chevalley":
            return cmd_chevalley(cfg)
        if ns.command == "crystal":
            return cmd_crystal(cfg)
        if ns.command == "selftest":
            return cmd_selftest(cfg)
        raise CLIError(f"unknown command {ns.command!r}")
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
