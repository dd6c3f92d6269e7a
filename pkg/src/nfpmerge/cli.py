"""Command-line interface: nfp, boolean, decompose, validate."""
from __future__ import annotations

import argparse
import logging
import os
import sys
import warnings
from pathlib import Path

from .geometry import DEFAULT_REL_EPS, GeometryError, Piece

log = logging.getLogger("nfpmerge")

EXIT_OK, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str) -> Piece:
    from .io import DocumentError, parse_piece

    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            piece = parse_piece(data)
        for w in caught:
            print(f"warning: {path}: {w.message}", file=sys.stderr)
    except (DocumentError, GeometryError) as e:
        raise InputError(f"{path}: {e}") from None
    if not piece.name:
        piece = Piece(piece.outer, piece.holes, piece.reference_point, Path(path).stem)
    return piece


def _emit(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _cmd_nfp(args) -> int:
    from .io import render_svg, serialize_nfp
    from .merge import gen_nfp

    A, B = _load(args.A), _load(args.B)
    result = gen_nfp(A, B, rel_eps=args.epsilon)
    log.info("nfp %s/%s: %s", A.name, B.name, result.counts())
    _emit(serialize_nfp(result, A.name, B.name), args.out)
    if args.svg:
        Path(args.svg).write_bytes(render_svg(result))
    return EXIT_OK


def _cmd_boolean(args) -> int:
    from .boolean import boolean
    from .io import pieces_to_document, render_svg

    A, B = _load(args.A), _load(args.B)
    pieces = boolean(A, B, args.op, rel_eps=args.epsilon)
    _emit(pieces_to_document(pieces), args.out)
    if args.svg:
        Path(args.svg).write_bytes(render_svg(pieces))
    return EXIT_OK


def _cmd_decompose(args) -> int:
    from .decomposition import decompose, piece_eps
    from .io import pieces_to_document, render_svg

    A = _load(args.A)
    d = decompose(A, piece_eps(A, args.epsilon))
    parts = [Piece(c, name=f"{A.name}_{i}") for i, c in enumerate(d.components)]
    _emit(pieces_to_document(parts), args.out)
    if args.svg:
        Path(args.svg).write_bytes(render_svg(parts))
    return EXIT_OK


def _cmd_validate(args) -> int:
    from .merge import gen_nfp
    from .oracle import verify_nfp

    A, B = _load(args.A), _load(args.B)
    result = gen_nfp(A, B, rel_eps=args.epsilon)
    rep = verify_nfp(A, B, result, grid_n=args.grid)
    counts = " ".join(f"{k}={v}" for k, v in result.counts().items())
    lines = [f"{A.name} / {B.name}: {counts}",
             f"grid {args.grid}x{args.grid}: {rep.n_points} placements, {rep.n_band} in contact band",
             f"disagreements: {len(rep.disagreements)}, probe failures: {len(rep.probe_failures)}"]
    for d in rep.disagreements[:10]:
        lines.append(f"  at ({d[0][0]:.6g}, {d[0][1]:.6g}): {d[1]} -> {d[2]}")
    for f in rep.probe_failures[:10]:
        lines.append(f"  {f[0]} at ({f[1][0]:.6g}, {f[1][1]:.6g}): {f[2]}")
    _emit(("\n".join(lines) + "\n").encode(), args.out)
    return EXIT_OK if rep.ok else EXIT_DISAGREE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nfpmerge", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, svg=True):
        sp.add_argument("--out", help="write the result document here instead of stdout")
        if svg:
            sp.add_argument("--svg", help="also write an SVG rendering")
        sp.add_argument("--epsilon", type=float, default=DEFAULT_REL_EPS,
                        help="relative snap tolerance (default %(default)g)")

    sp = sub.add_parser("nfp", help="no-fit polygon of orbital B around stationary A")
    sp.add_argument("A")
    sp.add_argument("B")
    common(sp)
    sp.set_defaults(func=_cmd_nfp)

    sp = sub.add_parser("boolean", help="boolean operation on two pieces")
    sp.add_argument("op", choices=["or", "and", "xor", "not"])
    sp.add_argument("A")
    sp.add_argument("B")
    common(sp)
    sp.set_defaults(func=_cmd_boolean)

    sp = sub.add_parser("decompose", help="convex decomposition of a piece")
    sp.add_argument("A")
    common(sp)
    sp.set_defaults(func=_cmd_decompose)

    sp = sub.add_parser("validate", help="check the NFP against the overlap oracle")
    sp.add_argument("A")
    sp.add_argument("B")
    sp.add_argument("--grid", type=int, default=64)
    common(sp, svg=False)
    sp.set_defaults(func=_cmd_validate)
    return p


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("NFPMERGE_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    if not args.epsilon > 0.0:
        print("error: --epsilon must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except GeometryError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
