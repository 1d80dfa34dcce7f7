"""Command-line interface.

Subcommands ``align``, ``score``, ``classify``, ``eail`` and ``oracle``.
Exit status: 0 ok, 2 parse or validation error, 3 resource cap, 4 unsupported
criterion/method combination.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import approx, exact, oracle, pairwise
from .core import GAP, Alignment, KSequence, validate_alignment
from .errors import (
    NMSAError,
    ParseError,
    ResourceCapExceeded,
    UnsupportedCombination,
    ValidationError,
)
from .scoring import (
    MatrixArray,
    ScoringMatrix,
    classify_matrix,
    render_decimal,
    score_A,
    score_N,
    score_SP,
    score_SP_array,
    score_V1,
    score_V2,
    score_V3,
)

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_UNSUPPORTED = 0, 2, 3, 4

CRITERIA = ("a", "n", "sp", "v1", "v2", "v3")
METHODS = ("exact", "star", "heuristic", "oracle")


# -- file formats -----------------------------------------------------------


def read_fasta(text: str) -> list[tuple[str, str]]:
    """``>``-headed records in file order; residues folded to upper case."""
    records: list[tuple[str, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(";"):
            continue
        if line.startswith(">"):
            records.append((line[1:].strip(), []))
        elif not records:
            raise ParseError(f"line {lineno}: sequence data before the first '>' header")
        else:
            records[-1][1].append("".join(line.split()).upper())
    if not records:
        raise ParseError("no FASTA records found")
    return [(name, "".join(parts)) for name, parts in records]


def _parse_entry(tok: str, where: str) -> Fraction:
    try:
        value = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{where}: cannot parse entry {tok!r}") from None
    if value < 0:
        raise ParseError(f"{where}: negative entry {tok!r}")
    return value


def parse_matrix(text: str) -> ScoringMatrix:
    """Whitespace-separated table.

    The first non-comment line lists the alphabet; the gap ``-`` is implied as
    the last row and column unless listed explicitly. Each following line
    holds one row in header order, optionally led by its symbol. Entries are
    integers or ``p/q``; the (gap, gap) cell must be ``*``. Symbols are folded
    to upper case.
    """
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty matrix file")
    header = [s.upper() for s in lines[0]]
    if GAP not in header:
        header.append(GAP)
    if len(set(header)) != len(header):
        raise ParseError("duplicate symbol in matrix header")
    size = len(header)
    rows = lines[1:]
    if len(rows) != size:
        raise ParseError(f"expected {size} matrix rows, found {len(rows)}")
    table: dict[tuple[str, str], Fraction] = {}
    for r, toks in enumerate(rows):
        label = header[r]
        if len(toks) == size + 1:
            if toks[0].upper() != label:
                raise ParseError(f"row {r + 1}: label {toks[0]!r}, expected {label!r}")
            toks = toks[1:]
        if len(toks) != size:
            raise ParseError(f"row {r + 1}: expected {size} entries, found {len(toks)}")
        for c, tok in enumerate(toks):
            col = header[c]
            if label == col == GAP:
                if tok != "*":
                    raise ParseError("the (-,-) cell must be '*'")
                table[label, col] = Fraction(0)
            elif tok == "*":
                raise ParseError(f"row {r + 1}: '*' is only allowed in the (-,-) cell")
            else:
                table[label, col] = _parse_entry(tok, f"row {r + 1}")
    symbols = tuple(s for s in header if s != GAP)
    order = symbols + (GAP,)
    try:
        return ScoringMatrix.from_rationals(symbols, [[table[a, b] for b in order] for a in order])
    except ValidationError as exc:
        raise ParseError(str(exc)) from None


def render_matrix(gamma: ScoringMatrix) -> str:
    order = gamma.symbols
    out = [" ".join(order[:-1])]
    for a in order:
        out.append(" ".join("*" if a == b == GAP else str(gamma(a, b)) for b in order))
    return "\n".join(out) + "\n"


def parse_alignment(text: str) -> Alignment:
    """Rows one per line. An optional ``#k width`` header allows empty rows."""
    lines = [ln.strip() for ln in text.splitlines()]
    header = None
    rows = []
    for ln in lines:
        if ln.startswith("#"):
            if header is None:
                parts = ln[1:].split()
                try:
                    header = (int(parts[0]), int(parts[1]))
                except (IndexError, ValueError):
                    header = None
            continue
        if ln:
            rows.append(ln.upper())
    if header is not None:
        k, width = header
        if width == 0 and not rows:
            rows = [""] * k
        if len(rows) != k:
            raise ParseError(f"header announces {k} rows, found {len(rows)}")
    if not rows:
        raise ParseError("alignment file has no rows")
    return Alignment(tuple(rows))


def render_alignment(A: Alignment) -> str:
    return f"#{A.k} {A.width}\n" + "".join(r + "\n" for r in A.rows)


def parse_manifest(text: str, base: Path, k: int, fallback: ScoringMatrix | None) -> MatrixArray:
    """``h i path`` per line, 1-based indices; missing pairs use ``fallback``."""
    mats: dict[tuple[int, int], ScoringMatrix] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"manifest line {lineno}: expected 'h i path'")
        try:
            h, i = int(parts[0]) - 1, int(parts[1]) - 1
        except ValueError:
            raise ParseError(f"manifest line {lineno}: bad indices") from None
        if h > i:
            h, i = i, h
        if not 0 <= h < i < k:
            raise ParseError(f"manifest line {lineno}: pair out of range for k={k}")
        path = Path(parts[2])
        if not path.is_absolute():
            path = base / path
        mats[h, i] = parse_matrix(_read(path))
    for h in range(k):
        for i in range(h + 1, k):
            if (h, i) not in mats:
                if fallback is None:
                    raise ParseError(f"manifest misses pair ({h + 1},{i + 1}) and no --matrix given")
                mats[h, i] = fallback
    return MatrixArray(k, mats)


def _read(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


# -- result document ----------------------------------------------------------


@dataclass
class ResultDocument:
    criterion: str
    method: str
    value: dict | None
    alignment: list[str]
    guarantee: str | None = None
    stats: dict = field(default_factory=dict)
    scores: dict | None = None

    @staticmethod
    def encode_value(x: Fraction, decimals: int) -> dict:
        return {"num": x.numerator, "den": x.denominator, "decimal": render_decimal(x, decimals)}

    @property
    def exact_value(self) -> Fraction | None:
        return None if self.value is None else Fraction(self.value["num"], self.value["den"])

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ResultDocument":
        return cls(**json.loads(text))

    def to_tsv(self) -> str:
        out = [f"criterion\t{self.criterion}", f"method\t{self.method}"]
        if self.value is not None:
            out.append(f"value\t{self.value['num']}/{self.value['den']}\t{self.value['decimal']}")
        for name, v in (self.scores or {}).items():
            out.append(f"{name}\t{v['num']}/{v['den']}\t{v['decimal']}")
        if self.guarantee is not None:
            out.append(f"guarantee\t{self.guarantee}")
        for key in sorted(self.stats):
            out.append(f"{key}\t{self.stats[key]}")
        for j, row in enumerate(self.alignment, 1):
            out.append(f"row{j}\t{row}")
        return "\n".join(out) + "\n"

    def to_text(self) -> str:
        out = []
        if self.value is not None:
            v = self.value
            frac = str(v["num"]) if v["den"] == 1 else f"{v['num']}/{v['den']}"
            out.append(f"{self.criterion} ({self.method}): {v['decimal']}  [{frac}]")
        for name, v in (self.scores or {}).items():
            out.append(f"{name}: {v['decimal']}  [{v['num']}/{v['den']}]")
        if self.guarantee is not None:
            out.append(f"guarantee: {self.guarantee}")
        out.extend(self.alignment)
        return "\n".join(out) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": lambda: self.to_json() + "\n", "tsv": self.to_tsv, "text": self.to_text}[fmt]()


# -- commands -----------------------------------------------------------------


def _load_inputs(args):
    if not args.input:
        raise ParseError("--input is required")
    records = read_fasta(_read(args.input))
    S = KSequence(tuple(seq for _, seq in records))
    gamma = parse_matrix(_read(args.matrix)) if args.matrix else None
    gammas = None
    if getattr(args, "matrix_array", None):
        gammas = parse_manifest(_read(args.matrix_array), Path(args.matrix_array).parent, S.k, gamma)
    if gamma is None and gammas is None:
        raise ParseError("--matrix (or --matrix-array) is required")
    return S, gamma, gammas


def _alphabet_check(S: KSequence, gamma):
    from .errors import AlphabetMismatch

    for h, s in enumerate(S.sequences):
        for ch in s:
            if ch not in gamma.symbols or ch == GAP:
                raise AlphabetMismatch(f"sequence {h + 1} contains {ch!r}, not in the matrix alphabet")


def _oracle_budget(args):
    return oracle.EnumerationBudget(max_alignments=args.max_alignments)


def _run_align(args, S, gamma, gammas):
    crit, method = args.criterion, args.method
    matrix = gammas if gammas is not None else gamma
    _alphabet_check(S, matrix.alphabet if isinstance(matrix, MatrixArray) else matrix)
    if gammas is not None and not (crit == "sp" and method in ("exact", "oracle")):
        raise UnsupportedCombination("--matrix-array is only supported with --criterion sp and --method exact|oracle")
    guarantee = None
    stats: dict = {}

    if crit in ("a", "n"):
        if S.k != 2:
            raise ValidationError(f"criterion {crit!r} needs exactly two sequences, got {S.k}")
        if method == "exact":
            r = (pairwise.dist_A if crit == "a" else pairwise.dist_N)(S[0], S[1], gamma)
            value, A, stats["cells"] = r.value, r.alignment, r.table_stats
        elif method == "heuristic":
            if crit != "n":
                raise UnsupportedCombination("the heuristic applies to criterion n only")
            value = pairwise.heuristic_N(S[0], S[1], gamma)
            A = pairwise.longest_optimal_alignment(S[0], S[1], gamma)
            guarantee = "2"
        elif method == "oracle":
            # with two rows SP is the A-score and V1 the N-score
            r = oracle.brute_force_optimum(S, gamma, "sp" if crit == "a" else "v1", _oracle_budget(args))
            value, A = r.value, r.alignment
            stats["alignments_enumerated"] = r.stats["alignments_enumerated"]
        else:
            raise UnsupportedCombination(f"method {method!r} is not available for criterion {crit!r}")
        return value, A, guarantee, stats

    if method == "exact":
        fn = {
            "sp": exact.msa_exact,
            "v1": exact.nmsa1_exact,
            "v2": exact.nmsa2_exact,
            "v3": exact.nmsa3_exact,
        }[crit]
        if gammas is not None:
            fn = exact.msa_exact_array
        r = fn(S, matrix, max_cells=args.max_cells)
        stats["cells"] = r.cells_computed
        return r.value, r.alignment, None, stats
    if method == "star":
        if crit == "sp":
            r = approx.approx_msa(S, gamma)
        elif crit == "v2":
            r = approx.approx_nmsa2(S, gamma)
        else:
            raise UnsupportedCombination(f"no star approximation for criterion {crit!r}")
        return r.value, r.alignment, r.guarantee, {"center": r.center + 1}
    if method == "oracle":
        key = "sp-array" if gammas is not None else crit
        r = oracle.brute_force_optimum(S, matrix, key, _oracle_budget(args))
        stats["alignments_enumerated"] = r.stats["alignments_enumerated"]
        return r.value, r.alignment, None, stats
    raise UnsupportedCombination(f"method {method!r} is not available for criterion {crit!r}")


def cmd_align(args) -> ResultDocument:
    S, gamma, gammas = _load_inputs(args)
    t0 = time.perf_counter()
    value, A, guarantee, stats = _run_align(args, S, gamma, gammas)
    stats["wall_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return ResultDocument(
        criterion=args.criterion,
        method=args.method,
        value=ResultDocument.encode_value(value, args.decimals),
        alignment=list(A.rows),
        guarantee=guarantee,
        stats=stats,
    )


def cmd_oracle(args) -> ResultDocument:
    args.method = "oracle"
    return cmd_align(args)


def cmd_score(args) -> ResultDocument:
    S, gamma, gammas = _load_inputs(args)
    if not args.alignment:
        raise ParseError("--alignment is required")
    A = validate_alignment(parse_alignment(_read(args.alignment)).rows, S)
    scores = {}
    if gamma is not None:
        _alphabet_check(S, gamma)
        for name, fn in (("sp", score_SP), ("v1", score_V1), ("v2", score_V2), ("v3", score_V3)):
            scores[name] = fn(gamma, A)
        if A.k == 2:
            scores["a"] = score_A(gamma, A)
            scores["n"] = score_N(gamma, A)
    if gammas is not None:
        scores["sp-array"] = score_SP_array(gammas, A)
    crit = args.criterion
    value = scores.get(crit)
    return ResultDocument(
        criterion=crit if value is not None else "all",
        method="score",
        value=None if value is None else ResultDocument.encode_value(value, args.decimals),
        alignment=list(A.rows),
        scores={k: ResultDocument.encode_value(v, args.decimals) for k, v in scores.items()},
    )


def cmd_classify(args) -> str:
    if not args.matrix:
        raise ParseError("--matrix is required")
    rep = classify_matrix(parse_matrix(_read(args.matrix)))
    if args.output == "json":
        return json.dumps(
            {"MC": rep.in_MC, "MW": rep.in_MW, "MN": rep.in_MN,
             "violations": [{"condition": c, "witness": list(w)} for c, w in rep.violations]},
            indent=2,
        ) + "\n"
    yes = {True: "yes", False: "no"}
    out = [f"MC\t{yes[rep.in_MC]}", f"MW\t{yes[rep.in_MW]}", f"MN\t{yes[rep.in_MN]}"]
    out += [f"violation\t{c}\t{','.join(w)}" for c, w in rep.violations]
    return "\n".join(out) + "\n"


def _int_list(text: str, flag: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"{flag} expects comma-separated integers") from None


def cmd_eail(args) -> str:
    if args.n is None or args.L is None:
        raise ParseError("--n and --L are required")
    n, L = _int_list(args.n, "--n"), _int_list(args.L, "--L")
    res = exact.eail_check(n, L)
    if args.output == "json":
        return json.dumps(
            {"feasible": res.feasible, "rip": [list(r) for r in res.rip],
             "witness": list(res.witness_rows()) if res.feasible else None},
            indent=2,
        ) + "\n"
    out = ["Yes" if res.feasible else "No"]
    if res.feasible:
        out += ["witness:"] + list(res.witness_rows())
    out += ["rip:"] + ["\t".join(map(str, r)) for r in res.rip]
    return "\n".join(out) + "\n"


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nmsa", description="Exact and approximate (normalized) multiple sequence alignment.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, need_seq=True):
        if need_seq:
            sp.add_argument("--input", help="FASTA file")
            sp.add_argument("--matrix-array", help="manifest of 'h i path' lines for per-pair matrices")
        sp.add_argument("--matrix", help="scoring matrix file")
        sp.add_argument("--output", choices=("json", "tsv", "text"), default="text")
        sp.add_argument("--decimals", type=int, default=2)

    a = sub.add_parser("align", help="optimal or approximate alignment")
    common(a)
    a.add_argument("--criterion", choices=CRITERIA, default="sp")
    a.add_argument("--method", choices=METHODS, default="exact")
    a.add_argument("--max-cells", type=int, default=exact.DEFAULT_MAX_CELLS)
    a.add_argument("--max-alignments", type=int, default=10**7)

    o = sub.add_parser("oracle", help="brute-force optimum over all alignments")
    common(o)
    o.add_argument("--criterion", choices=CRITERIA, default="sp")
    o.add_argument("--max-cells", type=int, default=exact.DEFAULT_MAX_CELLS)
    o.add_argument("--max-alignments", type=int, default=10**7)

    s = sub.add_parser("score", help="score a given alignment under every criterion")
    common(s)
    s.add_argument("--alignment", help="alignment file, one row per line")
    s.add_argument("--criterion", choices=CRITERIA + ("sp-array",), default=None)

    c = sub.add_parser("classify", help="matrix class membership")
    common(c, need_seq=False)

    e = sub.add_parser("eail", help="feasibility of an induced-length vector")
    e.add_argument("--n", help="sequence lengths, e.g. 5,5,5")
    e.add_argument("--L", help="induced lengths L12,L13,...,L(k-1)k")
    e.add_argument("--output", choices=("json", "text"), default="text")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("align", "oracle", "score"):
            doc = {"align": cmd_align, "oracle": cmd_oracle, "score": cmd_score}[args.command](args)
            sys.stdout.write(doc.render(args.output))
        elif args.command == "classify":
            sys.stdout.write(cmd_classify(args))
        else:
            sys.stdout.write(cmd_eail(args))
    except UnsupportedCombination as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except ResourceCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValidationError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NMSAError as exc:  # pragma: no cover - all subclasses handled above
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
