"""Symbolic solvable extensions ``R = N + span(x_1, .., x_s)`` and their Leibniz equations.

A generic extension keeps the right multiplications ``[e_i, x_j]`` equal to a
parametric derivation of *N* and makes every other new product an unknown:

* ``[x_j, e_i] = sum_t c{j}_{i}_{t} e_t``
* ``[x_j, x_k] = sum_t d{j}{k}_{t} e_t``

The derivation parameters are ``a{i}``/``b{i}`` for one complement vector and
``x{j}a{i}``/``x{j}b{i}`` for two.  Leibniz residuals on chosen triples give
polynomial equations; linear ones are solved and substituted back, and case
splits are driven by pinning variables.  A proof is replayed as a small text
script, see :func:`run_script`.
"""

from __future__ import annotations

import re
import shlex
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import Algebra, LinearMap, _bracket_sparse, _residual_sparse, verify_leibniz
from .derivations import _natural, derivation_space, derivation_template, nil_independence_rank
from .errors import CapExceeded, CyclicSubstitution, LeibnizError, ParseError, UnknownSymbol
from .linalg import ExactMatrix
from .scalars import ONE, ZERO, Poly, Scalar, format_scalar, parse_scalar, to_scalar, var
from .structure import is_nilpotent

__all__ = [
    "GenericExtension",
    "Equation",
    "ResidualSystem",
    "COMPLEMENT_CAPS",
    "extension_cap",
    "build_generic_extension",
    "residual_system",
    "annihilator_system",
    "auto_solve_linear",
    "substitute",
    "find_contradiction",
    "ProofSession",
    "ScriptResult",
    "run_script",
]

COMPLEMENT_CAPS = {("M1", 0): 2, ("M1", 1): 1, ("M2", None): 2, ("M31", None): 1}


def _reduce(x: Scalar, subs: Mapping[str, Scalar]) -> Scalar:
    return x.subs(subs) if isinstance(x, Poly) and subs else x


def _nonzero(x: Scalar) -> bool:
    return isinstance(x, Poly) or x != 0


@dataclass(frozen=True)
class GenericExtension:
    """Immutable snapshot of a symbolic extension.

    ``table`` is the assembled ``(n + s)``-dimensional algebra with polynomial
    structure constants; ``templates[j]`` is the derivation giving
    ``[e_i, x_{j+1}]``; ``structural`` holds the right-annihilator equations
    (recorded, never substituted automatically); ``bindings`` accumulates every
    substitution applied so far.
    """

    nilradical: Algebra
    pattern: str
    s: int
    templates: tuple[LinearMap, ...]
    table: Algebra
    structural: tuple["Equation", ...] = ()
    bindings: Mapping[str, Scalar] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.nilradical.dim

    @property
    def labels(self) -> tuple[str, ...]:
        return self.table.labels

    def variables(self) -> tuple[str, ...]:
        return tuple(sorted(self.table.variables(), key=_natural))

    def symbol_vector(self, symbol: str) -> dict[int, Scalar] | None:
        """Sparse vector of a basis symbol; ``None`` for ``"0"``."""
        if symbol == "0":
            return None
        try:
            return {self.labels.index(symbol): ONE}
        except ValueError:
            raise UnknownSymbol(f"unknown basis symbol {symbol!r}; expected one of {', '.join(self.labels)} or 0") from None

    def __eq__(self, other):
        if not isinstance(other, GenericExtension):
            return NotImplemented
        return (
            self.table == other.table
            and self.s == other.s
            and dict(self.bindings) == dict(other.bindings)
            and self.structural == other.structural
        )

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Equation:
    """``poly = 0``, the ``target`` coefficient of ``L(x, y, z)`` for ``triple``."""

    poly: Scalar
    triple: tuple[str, str, str]
    target: str

    def __str__(self) -> str:
        x, y, z = self.triple
        return f"{format_scalar(self.poly)} = 0  [{x},{y},{z}; {self.target}]"

    def reduced(self, subs: Mapping[str, Scalar]) -> "Equation":
        return replace(self, poly=_reduce(self.poly, subs))


@dataclass(frozen=True)
class ResidualSystem:
    equations: tuple[Equation, ...] = ()

    def __len__(self) -> int:
        return len(self.equations)

    def __iter__(self):
        return iter(self.equations)

    def polynomials(self) -> list[Scalar]:
        return [e.poly for e in self.equations]

    def contains(self, p) -> bool:
        """Whether some equation is a nonzero rational multiple of ``p = 0``."""
        p = to_scalar(p)
        return any(_proportional(e.poly, p) for e in self.equations)

    def __add__(self, other: "ResidualSystem") -> "ResidualSystem":
        return ResidualSystem(self.equations + other.equations)


def _proportional(p: Scalar, q: Scalar) -> bool:
    if not _nonzero(p) or not _nonzero(q):
        return not _nonzero(p) and not _nonzero(q)
    if not isinstance(p, Poly) or not isinstance(q, Poly):
        return not isinstance(p, Poly) and not isinstance(q, Poly)
    mono, c = next(iter(q.terms.items()))
    r = p.terms.get(mono)
    return r is not None and p == q * (r / c)


# ---------------------------------------------------------------------------
# construction


def _pattern_for(N: Algebra, pattern: str | None) -> tuple[str, dict]:
    """Resolve a pattern id; catalog nilradicals carry their parameters."""
    params = {k: v for k, v in N.params.items() if v is not None}
    if pattern is None:
        raise ValueError("a derivation pattern (M1, M2, M31 or full) is required")
    if pattern == "M1":
        return pattern, {"delta": int(params.get("delta", 0))}
    if pattern == "M2":
        return pattern, {"lam": params.get("lambda", ZERO)}
    return pattern, {}


def extension_cap(N: Algebra, pattern: str, **params) -> int:
    """Largest complement size allowed for the pattern."""
    if pattern == "M1":
        return COMPLEMENT_CAPS[("M1", int(params.get("delta", 0)))]
    if pattern in ("M2", "M31"):
        return COMPLEMENT_CAPS[(pattern, None)]
    if pattern == "full":
        rank = nil_independence_rank(list(derivation_space(N).basis))
        return N.dim if rank is None else rank
    raise ValueError(f"unknown pattern {pattern!r}")


def build_generic_extension(N: Algebra, pattern: str, s: int = 1, **params) -> GenericExtension:
    """Assemble the symbolic table of ``N + span(x_1..x_s)``.

    ``pattern`` is ``M1``, ``M2``, ``M31`` or ``full`` (the general element of
    the computed derivation algebra, variables ``t{i}``).  ``delta`` and
    ``lam`` default to the parameters recorded on a catalog algebra.
    """
    N.require_rational()
    if verify_leibniz(N) is not None:
        raise ValueError("the nilradical does not satisfy the Leibniz identity")
    if not is_nilpotent(N):
        raise ValueError("the nilradical is not nilpotent")
    if s not in (1, 2):
        raise CapExceeded("complements of dimension 1 or 2 are supported")
    pattern, defaults = _pattern_for(N, pattern)
    defaults.update(params)
    cap = extension_cap(N, pattern, **defaults)
    if s > cap:
        raise CapExceeded(f"pattern {pattern} admits at most {cap} nil-independent derivations; s = {s}")
    n = N.dim
    dim = n + s
    templates = []
    for j in range(1, s + 1):
        pre = "" if s == 1 else f"x{j}"
        if pattern == "full":
            T = derivation_space(N).general(prefix=f"{pre}t")
        else:
            T, _ = derivation_template(pattern, n, a_name=pre + "a{}", b_name=pre + "b{}", **defaults)
        templates.append(T)
    labels = tuple(f"e{i}" for i in range(1, n + 1)) + (("x",) if s == 1 else tuple(f"x{j}" for j in range(1, s + 1)))
    products: dict[tuple[int, int], list[Scalar]] = {}

    def vec() -> list[Scalar]:
        return [ZERO] * dim

    for (i, k), v in N.products.items():
        products[(i, k)] = list(v) + [ZERO] * s
    for j, T in enumerate(templates):
        xj = n + j
        for i in range(n):
            products[(i, xj)] = list(T.image(i)) + [ZERO] * s
            row = vec()
            for t in range(n):
                row[t] = var(f"c{j + 1}_{i + 1}_{t + 1}")
            products[(xj, i)] = row
        for k in range(s):
            row = vec()
            for t in range(n):
                row[t] = var(f"d{j + 1}{k + 1}_{t + 1}")
            products[(xj, n + k)] = row
    table = Algebra(dim, {key: tuple(v) for key, v in products.items()}, labels)
    E = GenericExtension(N, pattern, s, tuple(templates), table)
    return replace(E, structural=annihilator_system(E).equations)


# ---------------------------------------------------------------------------
# equations


def residual_system(E: GenericExtension, triples: Iterable[Sequence[str]]) -> ResidualSystem:
    """Coefficients of ``L(x, y, z)`` on the generic table, one equation per nonzero coordinate."""
    out: list[Equation] = []
    for triple in triples:
        if len(triple) != 3:
            raise UnknownSymbol(f"a triple needs three symbols, got {tuple(triple)!r}")
        vecs = [E.symbol_vector(sym) for sym in triple]
        if any(v is None for v in vecs):
            continue
        res = _residual_sparse(E.table, *vecs)
        for k in sorted(res):
            if _nonzero(res[k]):
                out.append(Equation(res[k], tuple(triple), E.labels[k]))
    return ResidualSystem(tuple(out))


def annihilator_system(E: GenericExtension) -> ResidualSystem:
    """Equations forcing squares into the right annihilator.

    For ``u`` ranging over ``[y, y]`` and ``[y, z] + [z, y]`` with ``y, z``
    basis vectors, every ``[w, u]`` must vanish.  The triple records ``(w, y,
    z)`` with the tag ``ann``.
    """
    A = E.table
    labels = E.labels
    dim = A.dim
    out: list[Equation] = []
    seen: set[tuple] = set()
    for y in range(dim):
        for z in range(y, dim):
            u = _bracket_sparse(A, {y: ONE}, {z: ONE})
            if z != y:
                for k, c in _bracket_sparse(A, {z: ONE}, {y: ONE}).items():
                    u[k] = u.get(k, ZERO) + c
            u = {k: c for k, c in u.items() if _nonzero(c)}
            if not u:
                continue
            key = tuple(sorted((k, str(c)) for k, c in u.items()))
            if key in seen:
                continue
            seen.add(key)
            for w in range(dim):
                res = _bracket_sparse(A, {w: ONE}, u)
                for k in sorted(res):
                    if _nonzero(res[k]):
                        out.append(Equation(res[k], (labels[w], labels[y], labels[z]), f"{labels[k]} ann"))
    return ResidualSystem(tuple(out))


def _var_rank(name: str) -> tuple:
    base = re.sub(r"^x\d+", "", name)
    head = base[:1]
    if head in ("c", "d"):
        group = 0
    elif head == "b":
        group = 2
    elif head == "a":
        group = 3
    else:
        group = 1
    return (group, _natural(name))


def _solvable_vars(p: Poly) -> list[tuple[str, Fraction]]:
    """Variables ``v`` with ``p = r v + q``, ``r`` rational and ``v`` absent from ``q``."""
    out = []
    counts: dict[str, int] = {}
    for mono in p.terms:
        for v, _ in mono:
            counts[v] = counts.get(v, 0) + 1
    for mono, c in p.terms.items():
        if len(mono) == 1 and mono[0][1] == 1 and counts[mono[0][0]] == 1:
            out.append((mono[0][0], c))
    return out


def auto_solve_linear(S: ResidualSystem | Iterable[Scalar], *, keep: Iterable[str] = ()) -> dict[str, Scalar]:
    """Triangular substitutions extracted from equations linear in some variable.

    Repeatedly takes an equation ``r v + p = 0`` (``r`` rational, ``v`` not in
    ``p``) and records ``v -> -p / r``, preferring to eliminate ``c``/``d``
    unknowns, then other variables, then ``b``, then ``a``.  Variables in
    *keep* are eliminated only when nothing else is available.  The result is
    fully reduced: no value mentions a solved variable.
    """
    polys = [e.poly for e in S] if isinstance(S, ResidualSystem) else [to_scalar(p) for p in S]
    keep = set(keep)
    subs: dict[str, Scalar] = {}
    pending = [p for p in polys if isinstance(p, Poly)]
    while True:
        best = None
        for idx, p in enumerate(pending):
            for v, r in _solvable_vars(p):
                rank = (v in keep,) + _var_rank(v)
                if best is None or rank < best[0]:
                    best = (rank, idx, v, r)
        if best is None:
            break
        _, idx, v, r = best
        p = pending.pop(idx)
        value = to_scalar(-(p - r * var(v)) / r)
        step = {v: value}
        subs = {k: _reduce(x, step) for k, x in subs.items()}
        subs[v] = value
        pending = [q for q in (_reduce(q, step) for q in pending) if isinstance(q, Poly)]
    return subs


def _resolve(subs: Mapping[str, Scalar]) -> dict[str, Scalar]:
    """Compose a substitution with itself until no value mentions a key."""
    subs = {k: to_scalar(v) for k, v in subs.items() if not (isinstance(v, Poly) and v == var(k))}
    graph = {k: (v.variables() & subs.keys()) if isinstance(v, Poly) else set() for k, v in subs.items()}
    order: list[str] = []
    state: dict[str, int] = {}

    def visit(k: str, path: list[str]) -> None:
        if state.get(k) == 2:
            return
        if state.get(k) == 1:
            cycle = path[path.index(k):] + [k]
            raise CyclicSubstitution("cyclic substitution: " + " -> ".join(cycle))
        state[k] = 1
        for d in sorted(graph[k]):
            visit(d, path + [k])
        state[k] = 2
        order.append(k)

    for k in sorted(subs):
        visit(k, [])
    resolved: dict[str, Scalar] = {}
    for k in order:
        resolved[k] = _reduce(subs[k], resolved)
    return resolved


def substitute(E: GenericExtension, subs: Mapping[str, object]) -> GenericExtension:
    """Rewrite every table entry; raises :class:`CyclicSubstitution` on a cycle."""
    step = _resolve(subs)
    if not step:
        return E
    table = E.table.instantiate(step)
    table = Algebra(table.dim, table.products, table.labels)
    templates = tuple(
        LinearMap(ExactMatrix(T.dim, T.dim, tuple(_reduce(x, step) for x in T.flat()))) for T in E.templates
    )
    bindings = {k: _reduce(v, step) for k, v in E.bindings.items()}
    for k, v in step.items():
        bindings.setdefault(k, v)
    structural = tuple(e.reduced(step) for e in E.structural if _nonzero(_reduce(e.poly, step)))
    return replace(E, table=table, templates=templates, bindings=bindings, structural=structural)


def find_contradiction(equations: Iterable[Equation], nonzero: Iterable[str], bindings: Mapping[str, Scalar]) -> str | None:
    """A reason the system has no solution with the pinned variables nonzero, if obvious.

    Detected: an equation reduced to a nonzero constant; an equation that is
    a single monomial in pinned variables; a pinned variable bound to 0.
    """
    nonzero = set(nonzero)
    for v in sorted(nonzero, key=_natural):
        if v in bindings and not _nonzero(bindings[v]):
            return f"{v} = 0 contradicts the condition {v} != 0"
    for e in equations:
        p = e.poly
        if not isinstance(p, Poly):
            if p != 0:
                return f"equation {e} has no solution"
            continue
        if len(p.terms) == 1:
            (mono,) = p.terms
            if {v for v, _ in mono} <= nonzero:
                return f"{format_scalar(p)} = 0 contradicts the condition(s) " + ", ".join(
                    f"{v} != 0" for v, _ in mono
                )
    return None


# ---------------------------------------------------------------------------
# proof scripts


@dataclass
class ProofSession:
    """Mutable driver for a scripted proof; each step replaces the snapshot."""

    extension: GenericExtension | None = None
    equations: list[Equation] = field(default_factory=list)
    nonzero: set[str] = field(default_factory=set)
    contradiction: str | None = None

    def require(self) -> GenericExtension:
        if self.extension is None:
            raise ParseError("no extension built yet; start the script with 'build'")
        return self.extension

    def apply(self, subs: Mapping[str, Scalar]) -> dict[str, Scalar]:
        E = self.require()
        new = substitute(E, subs)
        step = {k: v for k, v in new.bindings.items() if k not in E.bindings}
        self.extension = new
        self.equations = [e.reduced(new.bindings) for e in self.equations]
        self.equations = [e for e in self.equations if _nonzero(e.poly)]
        self._check()
        return step

    def add(self, system: ResidualSystem) -> None:
        E = self.require()
        for e in system:
            e = e.reduced(E.bindings)
            if _nonzero(e.poly) and not any(_proportional(e.poly, f.poly) for f in self.equations):
                self.equations.append(e)
        self._check()

    def solve(self) -> dict[str, Scalar]:
        subs = auto_solve_linear(ResidualSystem(tuple(self.equations)), keep=self.nonzero)
        if subs:
            self.apply(subs)
        return subs

    def _check(self) -> None:
        if self.contradiction is None and self.extension is not None:
            self.contradiction = find_contradiction(self.equations, self.nonzero, self.extension.bindings)


@dataclass(frozen=True)
class ScriptResult:
    output: str
    contradiction: str | None
    expectation_failed: str | None
    session: ProofSession = field(repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return self.expectation_failed is None


def _build_from_words(words: list[str]) -> GenericExtension:
    from .catalog import make

    if not words:
        raise ParseError("build needs a family id")
    family, opts = words[0], {}
    for w in words[1:]:
        if "=" not in w:
            raise ParseError(f"expected key=value, got {w!r}")
        k, v = w.split("=", 1)
        opts[k] = v
    n = int(opts.pop("n", 7))
    s = int(opts.pop("s", 1))
    pattern = opts.pop("pattern", None)
    convention = opts.pop("convention", None)
    N = make(family, n, {k: parse_scalar(v) for k, v in opts.items()}, convention=convention)
    if pattern is None:
        if family in ("M1", "M2"):
            pattern = family
        elif family == "M3" and N.params.get("alpha") == 1:
            pattern = "M31"
        else:
            pattern = "full"
    return build_generic_extension(N, pattern, s)


def _echo_equations(session: ProofSession, lines: list[str]) -> None:
    if session.equations:
        lines.extend(f"  {e}" for e in session.equations)
    else:
        lines.append("  (no equations)")


def run_script(text: str) -> ScriptResult:
    """Run a proof script and return its transcript.

    One command per line (``#`` starts a comment)::

        build <family> n=<n> [s=<s>] [pattern=<id>] [<param>=<value> ...]
        pin <var> != 0          record a non-nilpotency style condition
        pin <var> = <expr>      substitute a value (a case split)
        residual <y> <z> <w>    add the equations of L(y, z, w)
        annihilator             add the right-annihilator equations
        solve                   eliminate every linearly solvable variable
        substitute <var> = <expr> [, <var> = <expr> ...]
        expect contradiction | expect consistent

    After each command the pending equation set is echoed, so transcripts
    can be compared verbatim.
    """
    session = ProofSession()
    out: list[str] = []
    failed: str | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        out.append(f"> {line}")
        try:
            words = shlex.split(line)
            cmd, args = words[0], words[1:]
            if cmd == "build":
                session.extension = _build_from_words(args)
                session.equations = []
                session.contradiction = None
                E = session.extension
                out.append(f"  extension of dimension {E.table.dim} with {len(E.variables())} unknowns")
                continue
            if cmd == "pin":
                expr = " ".join(args)
                if "!=" in expr:
                    name, rhs = (p.strip() for p in expr.split("!=", 1))
                    if rhs != "0":
                        raise ParseError("only 'pin <var> != 0' is supported")
                    session.nonzero.add(name)
                    session._check()
                else:
                    name, rhs = _split_assignment(expr)
                    session.apply({name: parse_scalar(rhs)})
            elif cmd == "residual":
                if len(args) != 3:
                    raise ParseError("residual takes three basis symbols")
                session.add(residual_system(session.require(), [tuple(args)]))
            elif cmd == "annihilator":
                session.add(ResidualSystem(session.require().structural))
            elif cmd == "solve":
                subs = session.solve()
                for k, v in subs.items():
                    out.append(f"  {k} := {format_scalar(v)}")
            elif cmd == "substitute":
                subs = {}
                for part in " ".join(args).split(","):
                    name, rhs = _split_assignment(part)
                    subs[name] = parse_scalar(rhs)
                session.apply(subs)
            elif cmd == "expect":
                want = " ".join(args)
                if want == "contradiction" and session.contradiction is None:
                    failed = f"line {lineno}: expected a contradiction"
                elif want == "consistent" and session.contradiction is not None:
                    failed = f"line {lineno}: expected no contradiction"
                elif want not in ("contradiction", "consistent"):
                    raise ParseError(f"unknown expectation {want!r}")
                out.append(f"  expectation {'failed' if failed else 'met'}: {want}")
                continue
            else:
                raise ParseError(f"unknown command {cmd!r}")
        except ParseError as exc:
            raise ParseError(exc.message, line=lineno, column=1) from None
        except (LeibnizError, ValueError) as exc:
            raise ParseError(f"{type(exc).__name__}: {exc}", line=lineno, column=1) from None
        _echo_equations(session, out)
        if session.contradiction:
            out.append(f"  contradiction: {session.contradiction}")
    return ScriptResult("\n".join(out) + "\n", session.contradiction, failed, session)


def _split_assignment(text: str) -> tuple[str, str]:
    if "=" not in text:
        raise ParseError(f"expected <var> = <expr>, got {text.strip()!r}")
    name, rhs = (p.strip() for p in text.split("=", 1))
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
        raise ParseError(f"bad variable name {name!r}")
    return name, rhs
