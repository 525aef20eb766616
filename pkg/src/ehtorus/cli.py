"""Command line front end.

Exit codes::

    0  success (conclusive, consistent)
    1  I/O or unexpected error
    2  usage error (argparse)
    3  word parse error
    4  precondition error
    5  inconclusive certificate
    6  cross-check mismatch between the mapping class and Floer pipelines
    7  fdtc undetermined at the given orbit depth
    8  replay failed
    9  schema error

Word syntax: letters a, A, b, B, d, D where capitals are inverses, ``^n`` for
integer powers and parentheses for grouping.  The rightmost letter acts first.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import eh, io, mcg
from .heegaard import UnsupportedConfiguration, annulus_diagram, torus_diagram
from .surface import TorusBasis, is_basis
from .words import WordParseError, word

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 3
EXIT_PRECONDITION = 4
EXIT_INCONCLUSIVE = 5
EXIT_MISMATCH = 6
EXIT_FDTC = 7
EXIT_REPLAY = 8
EXIT_SCHEMA = 9

OUT_DIR_ENV = "EHTORUS_OUT_DIR"
CORPUS_LETTERS = "aAbBdD"


@dataclass(frozen=True)
class RunConfig:
    command: str
    surface: str = "torus"
    word: str | None = None
    twist: int | None = None
    basis: tuple[tuple[int, int], tuple[int, int]] | None = None
    bound: int | None = None
    orbit_depth: int = mcg.DEFAULT_ORBIT_DEPTH
    fmt: str = "text"
    seed: int = 0
    max_len: int = 6
    count: int = 100
    out: str | None = None


def _rat(q: Fraction) -> str:
    return str(Fraction(q))


def parse_basis(text: str) -> tuple[tuple[int, int], tuple[int, int]]:
    """``"p,q;r,s"`` (or four comma separated integers) to two slopes."""
    nums = [int(x) for x in text.replace(";", ",").split(",") if x.strip()]
    if len(nums) != 4:
        raise ValueError("a basis needs four integers 'p,q;r,s'")
    B = ((nums[0], nums[1]), (nums[2], nums[3]))
    if not is_basis(TorusBasis.of(*B)):
        raise mcg.PreconditionError("basis slopes must have determinant +-1")
    return B


def _load_input(cfg: RunConfig) -> RunConfig:
    """An inline word may instead name a JSON file in the word schema."""
    if cfg.command not in ("diagram", "certify"):
        return cfg
    if cfg.word and cfg.word.endswith(".json") and Path(cfg.word).is_file():
        doc = json.loads(Path(cfg.word).read_text())
        if doc.get("schema_version") != 1 or doc.get("surface") not in ("torus", "annulus"):
            raise io.SchemaError("input does not follow the word schema")
        basis = tuple(tuple(v) for v in doc["basis"]) if doc.get("basis") else cfg.basis
        return RunConfig(**{**cfg.__dict__, "surface": doc["surface"], "word": doc.get("word"),
                            "twist": doc.get("twist", cfg.twist), "basis": basis})
    return cfg


def _emit(cfg: RunConfig, doc: dict, text: str) -> str:
    out = io.dumps(doc) if cfg.fmt == "json" else text + "\n"
    return out


# ---------------------------------------------------------------- commands


def cmd_classify(cfg: RunConfig) -> tuple[int, str]:
    w = word(cfg.word or "")
    nt = mcg.classify(w)
    M = mcg.evaluate(w)
    doc = {"word": str(w), "matrix": [[M.a, M.b], [M.c, M.d]], "trace": M.trace, "type": nt.kind.value}
    if nt.invariant_slope is not None:
        doc["invariant_slope"] = list(nt.invariant_slope)
    if nt.eigen_slopes is not None:
        doc["eigen_slopes"] = [[s.u, s.v, s.w, s.D] for s in nt.eigen_slopes]
    text = f"{w or '1'}: {nt.kind.value}, matrix {doc['matrix']}, trace {M.trace}"
    return EXIT_OK, _emit(cfg, doc, text)


def cmd_fdtc(cfg: RunConfig) -> tuple[int, str]:
    w = word(cfg.word or "")
    c = mcg.fdtc(w, cfg.orbit_depth)
    return EXIT_OK, _emit(cfg, {"word": str(w), "fdtc": io.rational(c)}, _rat(c))


def cmd_tight(cfg: RunConfig) -> tuple[int, str]:
    w = word(cfg.word or "")
    v = mcg.tight(w, cfg.orbit_depth)
    doc = {"word": str(w), **v.to_json()}
    text = f"{v.verdict.value}, c = {_rat(v.fdtc)} ({v.reason.value})"
    return EXIT_OK, _emit(cfg, doc, text)


def _build(cfg: RunConfig):
    if cfg.surface == "annulus":
        if cfg.twist is None:
            raise mcg.PreconditionError("annulus needs --twist")
        return annulus_diagram(cfg.twist)
    B = TorusBasis.of(*cfg.basis) if cfg.basis else None
    return torus_diagram(word(cfg.word or ""), B)


def _out_dir(cfg: RunConfig) -> Path:
    return Path(cfg.out or os.environ.get(OUT_DIR_ENV, "."))


def cmd_diagram(cfg: RunConfig) -> tuple[int, str]:
    D = _build(cfg)
    ok, _ = D.check_weak_admissibility()
    doc = io.export_json(D)
    summary = {
        "label": D.label,
        "generators": len(D.generators()),
        "periodic_rank": len(doc["periodic_basis"]),
        "weakly_admissible": ok,
        "euler_sum": doc["euler_sum"],
    }
    if D.F_zone is not None:
        summary["filtration_minimal"] = len(D.filtration_minimal_generators())
    if cfg.fmt == "svg":
        return EXIT_OK, io.export_svg(D)
    if cfg.out is not None or os.environ.get(OUT_DIR_ENV):
        d = _out_dir(cfg)
        d.mkdir(parents=True, exist_ok=True)
        (d / "diagram.json").write_text(io.dumps(doc))
        (d / "diagram.svg").write_text(io.export_svg(D))
    if cfg.fmt == "json":
        return EXIT_OK, io.dumps(doc)
    lines = [f"{k}: {v}" for k, v in summary.items()]
    return EXIT_OK, "\n".join(lines) + "\n"


def _certificate(cfg: RunConfig) -> eh.Certificate:
    B = TorusBasis.of(*cfg.basis) if cfg.basis else None
    if cfg.surface == "annulus":
        if cfg.twist is None:
            raise mcg.PreconditionError("annulus needs --twist")
        return eh.decide("annulus", twist=cfg.twist, bound=cfg.bound)
    return eh.decide("torus", word(cfg.word or ""), basis=B, bound=cfg.bound, orbit_depth=cfg.orbit_depth)


def cmd_certify(cfg: RunConfig) -> tuple[int, str]:
    try:
        cert = _certificate(cfg)
    except eh.VerdictMismatch as e:
        dump = {"mismatch": str(e), "certificate": e.certificate.to_json(), "verdict": e.verdict.to_json()}
        return EXIT_MISMATCH, io.dumps(dump)
    doc = cert.to_json()
    if cfg.out:
        Path(cfg.out).write_text(io.dumps(doc))
    code = EXIT_INCONCLUSIVE if cert.kind is eh.CertKind.INCONCLUSIVE else EXIT_OK
    return code, _emit(cfg, doc, f"{cert.kind.value} ({cert.method})")


def cmd_replay(cfg: RunConfig) -> tuple[int, str]:
    doc = json.loads(Path(cfg.word).read_text())
    try:
        eh.replay(doc)
    except eh.ReplayError as e:
        return EXIT_REPLAY, f"FAILED: {e}\n"
    except (KeyError, ValueError) as e:
        raise io.SchemaError(str(e)) from e
    return EXIT_OK, "OK\n"


def corpus_words(seed: int, max_len: int, count: int) -> list[str]:
    rng = random.Random(seed)
    if max_len <= 0:
        return [""]
    return ["".join(rng.choice(CORPUS_LETTERS) for _ in range(rng.randint(0, max_len))) for _ in range(count)]


def _corpus_row(args) -> dict:
    w, bound, depth = args
    t0 = time.perf_counter()
    v = mcg.tight(w, depth)
    row = {"word": w, "tight": v.verdict.value, "fdtc": io.rational(v.fdtc)}
    try:
        cert = eh.decide("torus", w, bound=bound, orbit_depth=depth)
        row["certificate"] = cert.kind.value
        row["agree"] = cert.kind.nonzero is None or cert.kind.nonzero == (v.verdict is mcg.Verdict.TIGHT)
    except eh.VerdictMismatch as e:
        row["certificate"] = e.certificate.kind.value
        row["agree"] = False
        row["evidence"] = e.certificate.to_json()
    row["seconds"] = time.perf_counter() - t0
    return row


def run_corpus(seed: int, max_len: int, count: int, bound: int | None = None,
               orbit_depth: int = mcg.DEFAULT_ORBIT_DEPTH, workers: int | None = None) -> list[dict]:
    words = corpus_words(seed, max_len, count)
    jobs = [(w, bound, orbit_depth) for w in words]
    if workers == 1 or len(jobs) < 8:
        return [_corpus_row(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_corpus_row, jobs, chunksize=8))


def summarize_corpus(rows: list[dict]) -> dict:
    counts: dict[str, int] = {}
    for r in rows:
        counts[r["certificate"]] = counts.get(r["certificate"], 0) + 1
    inc = counts.get(eh.CertKind.INCONCLUSIVE.value, 0)
    return {
        "words": len(rows),
        "disagreements": sum(not r["agree"] for r in rows),
        "by_kind": dict(sorted(counts.items())),
        "inconclusive_rate": io.rational(Fraction(inc, len(rows))) if rows else [0, 1],
    }


def cmd_corpus(cfg: RunConfig) -> tuple[int, str]:
    t0 = time.perf_counter()
    rows = run_corpus(cfg.seed, cfg.max_len, cfg.count, cfg.bound, cfg.orbit_depth)
    bad = [r for r in rows if not r["agree"]]
    summary = summarize_corpus(rows)
    doc = {"seed": cfg.seed, "max_len": cfg.max_len, "count": cfg.count, "summary": summary,
           "rows": [{k: v for k, v in r.items() if k != "seconds"} for r in rows]}
    if bad:
        return EXIT_MISMATCH, io.dumps({"disagreements": bad})
    if cfg.fmt == "json":
        return EXIT_OK, io.dumps(doc)
    lines = [f"{'word':<14}{'tight':<12}{'certificate':<26}"]
    for r in rows:
        lines.append(f"{r['word'] or '1':<14}{r['tight']:<12}{r['certificate']:<26}")
    lines.append(f"words {summary['words']}, disagreements {summary['disagreements']}, "
                 f"inconclusive {summary['inconclusive_rate'][0]}/{summary['inconclusive_rate'][1]}")
    print(f"elapsed {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return EXIT_OK, "\n".join(lines) + "\n"


COMMANDS = {
    "classify": cmd_classify,
    "fdtc": cmd_fdtc,
    "tight": cmd_tight,
    "diagram": cmd_diagram,
    "certify": cmd_certify,
    "replay": cmd_replay,
    "corpus": cmd_corpus,
}


# ---------------------------------------------------------------- parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ehtorus",
        description="Tightness and contact-class certificates for annulus and punctured-torus open books.",
        epilog=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=["json", "text", "svg"], default="text")
    common.add_argument("--orbit-depth", type=int, default=mcg.DEFAULT_ORBIT_DEPTH,
                        help=f"PA bracketing depth (default {mcg.DEFAULT_ORBIT_DEPTH})")
    common.add_argument("--out", help=f"output path or directory (default ${OUT_DIR_ENV} or stdout)")
    build = argparse.ArgumentParser(add_help=False)
    build.add_argument("--basis", help="torus basis 'p,q;r,s' (slopes of a_1 and a_2)")
    build.add_argument("--bound", type=int, help="enumeration bound per lattice direction (default max|D0|+1)")
    build.add_argument("--twist", type=int, help="annulus monodromy exponent")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("classify", "fdtc", "tight"):
        s = sub.add_parser(name, parents=[common], help=f"{name} of a torus word")
        s.add_argument("word")
    for name in ("diagram", "certify"):
        s = sub.add_parser(name, parents=[common, build], help=f"{name} for an open book")
        s.add_argument("surface", choices=["torus", "annulus"])
        s.add_argument("word", nargs="?", default="", help="inline word or a JSON input file")
    s = sub.add_parser("replay", parents=[common], help="re-validate a certificate file")
    s.add_argument("word", metavar="certificate")
    s = sub.add_parser("corpus", parents=[common], help="cross-check both pipelines on random words")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-len", type=int, default=6)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--bound", type=int)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    basis = parse_basis(ns.basis) if getattr(ns, "basis", None) else None
    return RunConfig(
        command=ns.command,
        surface=getattr(ns, "surface", "torus"),
        word=getattr(ns, "word", None),
        twist=getattr(ns, "twist", None),
        basis=basis,
        bound=getattr(ns, "bound", None),
        orbit_depth=ns.orbit_depth,
        fmt=ns.fmt,
        seed=getattr(ns, "seed", 0),
        max_len=getattr(ns, "max_len", 6),
        count=getattr(ns, "count", 100),
        out=ns.out,
    )


def run(argv: list[str] | None = None) -> tuple[int, str]:
    ns = build_parser().parse_args(argv)
    try:
        cfg = _load_input(config_from_args(ns))
        return COMMANDS[cfg.command](cfg)
    except WordParseError as e:
        return EXIT_PARSE, f"parse error: {e}\n"
    except mcg.FdtcUndetermined as e:
        return EXIT_FDTC, f"fdtc undetermined: {e}\n"
    except (mcg.PreconditionError, UnsupportedConfiguration) as e:
        return EXIT_PRECONDITION, f"precondition error: {e}\n"
    except io.SchemaError as e:
        return EXIT_SCHEMA, f"schema error: {e}\n"
    except (OSError, ValueError) as e:
        return EXIT_ERROR, f"error: {e}\n"


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_INCONCLUSIVE, EXIT_MISMATCH) else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
