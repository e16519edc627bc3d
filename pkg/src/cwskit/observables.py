"""Decoding observables for CWS codes.

Pauli decoding observables are stabilizer elements commuting with every
codeword operator; their exponents form the kernel of the codeword
matrix.  Non-Pauli decoding observables handled here are the four-term
involutions sign * S^v * (-I + S^v1 + S^v2 + S^(v1+v2)) / 2 over the
stabilizer group.  Such an observable fixes every codeword state exactly
when <C_i, v> = <C_i, v1> OR <C_i, v2> for all codewords C_i, a linear
system over GF(2) once the right-hand side is fixed; it measures an error
set without information leakage exactly when v plus the commutation
correction of each error still solves that system.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .cws import CwsCode, ErrorSet, classicalize, code_fingerprint, detects
from .pauli import Pauli, commutes, stabilizer_element


class UndetectableError(ValueError):
    """An error set contains an error the code cannot detect."""


@dataclass(eq=False)
class Type4Observable:
    """Four-term involution sign * S^v * (-I + S^v1 + S^v2 + S^(v1+v2)) / 2.

    v1 and v2 must be distinct and nonzero, which makes the four group
    exponents v, v+v1, v+v2, v+v1+v2 distinct and the operator square to
    the identity.
    """

    v: np.ndarray
    v1: np.ndarray
    v2: np.ndarray
    sign: int = 1

    def __post_init__(self):
        self.v = gf2.as_vector(self.v).copy()
        self.v1 = gf2.as_vector(self.v1).copy()
        self.v2 = gf2.as_vector(self.v2).copy()
        if not (self.v.shape == self.v1.shape == self.v2.shape):
            raise ValueError("v, v1, v2 must have equal length")
        if not self.v1.any() or not self.v2.any():
            raise ValueError("v1 and v2 must be nonzero")
        if np.array_equal(self.v1, self.v2):
            raise ValueError("v1 and v2 must differ")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        for arr in (self.v, self.v1, self.v2):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return int(self.v.shape[0])

    def exponents(self) -> tuple[np.ndarray, ...]:
        """The four stabilizer exponents carrying coefficients -1/2, 1/2, 1/2, 1/2."""
        return (self.v, self.v ^ self.v1, self.v ^ self.v2, self.v ^ self.v1 ^ self.v2)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Type4Observable):
            return NotImplemented
        return (
            self.sign == other.sign
            and np.array_equal(self.v, other.v)
            and np.array_equal(self.v1, other.v1)
            and np.array_equal(self.v2, other.v2)
        )

    def __repr__(self) -> str:
        return (
            f"Type4Observable(v={gf2.format_vector(self.v)!r},"
            f" v1={gf2.format_vector(self.v1)!r},"
            f" v2={gf2.format_vector(self.v2)!r}, sign={self.sign})"
        )

    def to_dict(self) -> dict:
        return {
            "v": gf2.format_vector(self.v),
            "v1": gf2.format_vector(self.v1),
            "v2": gf2.format_vector(self.v2),
            "sign": self.sign,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Type4Observable":
        return cls(
            gf2.parse_vector(d["v"]),
            gf2.parse_vector(d["v1"]),
            gf2.parse_vector(d["v2"]),
            int(d.get("sign", 1)),
        )


def pauli_normalizer_generators(code: CwsCode) -> list[np.ndarray]:
    """Independent exponents of stabilizer elements commuting with every
    codeword operator: the canonical kernel basis of the codeword matrix."""
    return gf2.kernel_basis(code.codewords)


def commutation_correction(code: CwsCode, v1, v2, g: Pauli) -> np.ndarray:
    """Stabilizer exponent picked up when g is moved past the four-term
    element of (v1, v2).

    Returns v1+v2 if g anticommutes with both S^v1 and S^v2, v1 if only
    with S^v2, v2 if only with S^v1, and 0 otherwise.
    """
    v1 = gf2.as_vector(v1)
    v2 = gf2.as_vector(v2)
    if g.n != code.n:
        raise ValueError(f"operator acts on {g.n} qubits, code has {code.n}")
    anti1 = not commutes(stabilizer_element(code.generators, v1), g)
    anti2 = not commutes(stabilizer_element(code.generators, v2), g)
    if anti1 and anti2:
        return v1 ^ v2
    if anti2:
        return v1.copy()
    if anti1:
        return v2.copy()
    return np.zeros(code.n, dtype=np.uint8)


def stabilization_rhs(code: CwsCode, v1, v2) -> np.ndarray:
    """Right-hand side of the stabilization system: the logical OR
    <C_i, v1> | <C_i, v2> per codeword."""
    return gf2.matvec(code.codewords, v1) | gf2.matvec(code.codewords, v2)


def stabilizes(code: CwsCode, a: Type4Observable) -> bool:
    """True iff the observable fixes every codeword state, i.e. its sign
    is +1 and <C_i, v> matches the stabilization right-hand side."""
    if a.sign != 1:
        return False
    rhs = stabilization_rhs(code, a.v1, a.v2)
    return np.array_equal(gf2.matvec(code.codewords, a.v), rhs)


def is_decoding_observable(code: CwsCode, errors: ErrorSet, a: Type4Observable) -> bool:
    """Main usability criterion: for every error, v plus its commutation
    correction must still solve the stabilization system.  Errors are
    assumed detectable.  The overall sign does not matter here."""
    rhs = stabilization_rhs(code, a.v1, a.v2)
    for _, e in errors:
        shifted = a.v ^ commutation_correction(code, a.v1, a.v2, e)
        if not np.array_equal(gf2.matvec(code.codewords, shifted), rhs):
            return False
    return True


def eigenvalue_on_error(code: CwsCode, a: Type4Observable, e: Pauli) -> int:
    """Measurement outcome of the observable on any state corrupted by e.

    Equals sign * m * (-1)^[correction != 0] where m is the commutation
    sign of S^v with e.  Raises ValueError when the observable leaks on e,
    i.e. the usability criterion fails for the singleton {e}.
    """
    corr = commutation_correction(code, a.v1, a.v2, e)
    rhs = stabilization_rhs(code, a.v1, a.v2)
    if not np.array_equal(gf2.matvec(code.codewords, a.v ^ corr), rhs):
        raise ValueError(
            f"observable leaks on error {e}: shifted exponent does not solve"
            " the stabilization system"
        )
    m = 1 if commutes(stabilizer_element(code.generators, a.v), e) else -1
    return a.sign * m * (-1 if corr.any() else 1)


@dataclass
class SyndromeClass:
    """Errors sharing one sign vector under the measured Pauli observables."""

    signs: tuple[int, ...]
    members: list[int]


def pauli_syndrome_partition(
    code: CwsCode, errors: ErrorSet, observables: list[np.ndarray]
) -> list[SyndromeClass]:
    """Group errors by their commutation signs against each S^O.

    Classes are ordered by sign vector with + before -, members by input
    index; the identity error always lands in the all-plus class.
    """
    elements = [stabilizer_element(code.generators, o) for o in observables]
    buckets: dict[tuple[int, ...], list[int]] = {}
    for idx, (_, e) in enumerate(errors):
        signs = tuple(1 if commutes(s, e) else -1 for s in elements)
        buckets.setdefault(signs, []).append(idx)
    ordered = sorted(buckets, key=lambda s: tuple(0 if b == 1 else 1 for b in s))
    return [SyndromeClass(signs, buckets[signs]) for signs in ordered]


def error_normalizer_elements(code: CwsCode, subset: ErrorSet) -> list[np.ndarray]:
    """All exponents V with S^V commuting with every error in the subset.

    S^V commutes with a Pauli g exactly when <classicalize(g), V> = 0, so
    the exponents are the kernel of the matrix of classicalized errors.
    Returned as the full span, ascending as big-endian integers.
    """
    rows = np.array(
        [classicalize(code, e) for _, e in subset], dtype=np.uint8
    ).reshape(len(subset), code.n)
    return gf2.enumerate_span(gf2.kernel_basis(rows), code.n)


def search_space_size(code: CwsCode, subset: ErrorSet, mode: str = "corollary") -> int:
    """Number of candidate (v1, v2) pairs the search may visit."""
    if mode == "corollary":
        rows = np.array(
            [classicalize(code, e) for _, e in subset], dtype=np.uint8
        ).reshape(len(subset), code.n)
        m = 2 ** (code.n - gf2.rank(rows)) - 1
    elif mode == "exhaustive":
        m = 2 ** code.n - 1
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return m * (m - 1) // 2


def search_type4(
    code: CwsCode,
    subset: ErrorSet,
    mode: str = "corollary",
    workers: int = 1,
) -> Type4Observable | None:
    """First four-term observable splitting the subset, or None.

    Candidate exponents are either the normalizer of the subset (fast,
    corollary sound: corrections vanish so usability is automatic once the
    stabilization system solves) or the whole group (exhaustive: usability
    is enforced through the correction consistency condition).  Pairs are
    visited in ascending big-endian order with v1 < v2; the stabilization
    solution is the coset minimum, so results are reproducible.
    """
    if len(subset) < 2:
        raise ValueError("need at least two errors to split")
    if mode == "corollary":
        elems = error_normalizer_elements(code, subset)
        cand = [v for v in elems if v.any()]
    elif mode == "exhaustive":
        cand = [gf2.from_int(t, code.n) for t in range(1, 2 ** code.n)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if len(cand) < 2:
        return None
    candidates = np.array(cand, dtype=np.uint8)
    return _pair_search(code, subset, candidates, mode == "exhaustive", workers)


def _pair_search(
    code: CwsCode,
    subset: ErrorSet,
    candidates: np.ndarray,
    exhaustive: bool,
    workers: int,
) -> Type4Observable | None:
    c_mat = code.codewords
    cl = np.array([classicalize(code, e) for _, e in subset], dtype=np.uint8)
    ipc = (candidates @ c_mat.T) % 2  # <C_i, cand>
    acl = (candidates @ cl.T) % 2  # anticommutation bits against subset errors
    left = gf2.kernel_basis(c_mat.T)
    left_mat = (
        np.array(left, dtype=np.uint8)
        if left
        else np.zeros((0, c_mat.shape[0]), dtype=np.uint8)
    )
    m = candidates.shape[0]

    # When every classical-word difference cl_t + cl_0 lies in the row
    # space of C (always true inside one syndrome class), the sign gap
    # between two errors is <alpha_t, rhs> plus the correction-bit gap,
    # independent of which solution v is taken.  That predicts splitting
    # for a whole block of pairs without solving any system.
    alpha_rows = []
    for t in range(1, cl.shape[0]):
        solved = gf2.solve(c_mat.T, cl[t] ^ cl[0])
        if solved is None:
            alpha_rows = None
            break
        alpha_rows.append(solved[0])
    alpha = np.array(alpha_rows, dtype=np.uint8) if alpha_rows is not None else None

    def split_by_solution(i: int, j: int, rhs: np.ndarray) -> bool:
        solved = gf2.solve(c_mat, rhs)
        if solved is None:
            return False
        v = gf2.minimal_solution(*solved)
        anti = (acl[i] | acl[j]) if exhaustive else np.zeros(len(subset), dtype=np.uint8)
        lam = ((cl @ v) % 2) ^ anti
        return lam.min() != lam.max()

    def scan(rows: range) -> tuple[int, int] | None:
        for i in rows:
            tail = slice(i + 1, m)
            p_block = ipc[i] | ipc[tail]
            if exhaustive:
                # correction per error: a1 * v2 + a2 * v1, so its image
                # under C is a1 * (C v2) + a2 * (C v1)
                d_block = (acl[i][None, :, None] & ipc[tail][:, None, :]) ^ (
                    acl[tail][:, :, None] & ipc[i][None, None, :]
                )
                consistent = (d_block == d_block[:, :1, :]).all(axis=(1, 2))
                rhs_block = p_block ^ d_block[:, 0, :]
            else:
                consistent = np.ones(p_block.shape[0], dtype=bool)
                rhs_block = p_block
            solvable = consistent & (
                ((rhs_block @ left_mat.T) % 2 == 0).all(axis=1)
            )
            if alpha is not None:
                anti_block = (acl[i][None, :] | acl[tail]) if exhaustive else np.zeros(
                    (rhs_block.shape[0], cl.shape[0]), dtype=np.uint8
                )
                gaps = ((rhs_block @ alpha.T) % 2) ^ (
                    anti_block[:, 1:] ^ anti_block[:, :1]
                )
                hits = np.nonzero(solvable & gaps.any(axis=1))[0]
                if hits.size:
                    return i, i + 1 + int(hits[0])
            else:
                for j_rel in np.nonzero(solvable)[0]:
                    j = i + 1 + int(j_rel)
                    if split_by_solution(i, j, rhs_block[j_rel]):
                        return i, j
        return None

    hit: tuple[int, int] | None = None
    if workers <= 1:
        hit = scan(range(m))
    else:
        # waves of equally ranked chunks: results are merged in candidate
        # order, so the outcome is identical to the sequential scan
        chunk = max(1, -(-m // (workers * 8)))
        ranges = [range(s, min(s + chunk, m)) for s in range(0, m, chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for start in range(0, len(ranges), workers):
                wave = ranges[start:start + workers]
                for res in pool.map(scan, wave):
                    if res is not None:
                        hit = res
                        break
                if hit is not None:
                    break
    if hit is None:
        return None
    i, j = hit
    if exhaustive:
        d0 = (acl[i][0] & ipc[j]) ^ (acl[j][0] & ipc[i])
        rhs = (ipc[i] | ipc[j]) ^ d0
    else:
        rhs = ipc[i] | ipc[j]
    solved = gf2.solve(c_mat, rhs)
    assert solved is not None
    return Type4Observable(
        gf2.minimal_solution(*solved), candidates[i], candidates[j]
    )


@dataclass
class RefinementStep:
    """One conditional measurement: which observable, applied to which
    error indices, with the expected sign per index."""

    observable: int
    applies_to: list[int]
    signs: dict[int, int]


@dataclass
class UnresolvedSubset:
    class_index: int
    members: list[int]
    pairs_searched: int


@dataclass
class DecodingPlan:
    """Pauli syndrome layer plus conditional four-term refinements."""

    n: int
    mode: str
    code_sha256: str
    error_labels: list[str]
    error_paulis: list[str]
    pauli_observables: list[np.ndarray]
    classes: list[SyndromeClass]
    type4_observables: list[Type4Observable]
    refinements: list[list[RefinementStep]]
    unresolved: list[UnresolvedSubset] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.unresolved

    def observable_class_counts(self) -> list[int]:
        """How many syndrome classes each four-term observable serves."""
        counts = [0] * len(self.type4_observables)
        for steps in self.refinements:
            for k in {step.observable for step in steps}:
                counts[k] += 1
        return counts

    def to_dict(self) -> dict:
        def sign_string(signs):
            return "".join("+" if s == 1 else "-" for s in signs)

        return {
            "n": self.n,
            "mode": self.mode,
            "code_sha256": self.code_sha256,
            "resolved": self.complete,
            "errors": [
                {"label": l, "pauli": p}
                for l, p in zip(self.error_labels, self.error_paulis)
            ],
            "pauli_observables": [gf2.format_vector(o) for o in self.pauli_observables],
            "type4_observables": [a.to_dict() for a in self.type4_observables],
            "classes": [
                {
                    "signs": sign_string(cls.signs),
                    "members": [self.error_labels[i] for i in cls.members],
                    "steps": [
                        {
                            "observable": step.observable,
                            "applies_to": [self.error_labels[i] for i in step.applies_to],
                            "signs": {
                                self.error_labels[i]: s for i, s in step.signs.items()
                            },
                        }
                        for step in steps
                    ],
                }
                for cls, steps in zip(self.classes, self.refinements)
            ],
            "unresolved": [
                {
                    "class": u.class_index,
                    "members": [self.error_labels[i] for i in u.members],
                    "pairs_searched": u.pairs_searched,
                }
                for u in self.unresolved
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DecodingPlan":
        labels = [e["label"] for e in d["errors"]]
        index = {l: i for i, l in enumerate(labels)}
        classes, refinements = [], []
        for c in d["classes"]:
            signs = tuple(1 if ch == "+" else -1 for ch in c["signs"])
            classes.append(SyndromeClass(signs, [index[l] for l in c["members"]]))
            refinements.append(
                [
                    RefinementStep(
                        s["observable"],
                        [index[l] for l in s["applies_to"]],
                        {index[l]: v for l, v in s["signs"].items()},
                    )
                    for s in c["steps"]
                ]
            )
        return cls(
            n=d["n"],
            mode=d["mode"],
            code_sha256=d["code_sha256"],
            error_labels=labels,
            error_paulis=[e["pauli"] for e in d["errors"]],
            pauli_observables=[gf2.parse_vector(o) for o in d["pauli_observables"]],
            classes=classes,
            type4_observables=[
                Type4Observable.from_dict(a) for a in d["type4_observables"]
            ],
            refinements=refinements,
            unresolved=[
                UnresolvedSubset(
                    u["class"], [index[l] for l in u["members"]], u["pairs_searched"]
                )
                for u in d["unresolved"]
            ],
        )

    def to_table(self) -> str:
        """Human-readable sign table, one block per syndrome class."""
        lines = []
        header = " ".join(f"O{k + 1}" for k in range(len(self.pauli_observables)))
        lines.append(f"pauli observables: {header}")
        for o, vec in zip(range(len(self.pauli_observables)), self.pauli_observables):
            lines.append(f"  O{o + 1} = {gf2.format_vector(vec)}")
        for cls, steps in zip(self.classes, self.refinements):
            pattern = "".join("+" if s == 1 else "-" for s in cls.signs)
            members = " ".join(self.error_labels[i] for i in cls.members)
            lines.append(f"[{pattern}] errors: {members}")
            for step in steps:
                cells = "   ".join(
                    f"{self.error_labels[i]} {'+' if step.signs[i] == 1 else '-'}"
                    for i in step.applies_to
                )
                lines.append(f"  A{step.observable + 1}: {cells}")
            if len(cls.members) == 1:
                lines.append("  (already identified)")
        for u in self.unresolved:
            members = " ".join(self.error_labels[i] for i in u.members)
            lines.append(
                f"UNRESOLVED in class {u.class_index}: {{{members}}}"
                f" after {u.pairs_searched} candidate pairs"
            )
        return "\n".join(lines)


def build_decoding_plan(
    code: CwsCode,
    errors: ErrorSet,
    mode: str = "corollary",
    workers: int = 1,
) -> DecodingPlan:
    """Full decoding procedure.

    Measures the Pauli normalizer generators to partition the error set
    into syndrome classes, then refines every multi-error class with
    four-term observables: previously found observables are reused when
    they remain usable and split the class, otherwise a fresh pair search
    runs; sub-splits recurse until singletons.  Classes the search cannot
    split are reported with the exhausted pair count instead of failing.
    """
    for label, e in errors:
        result = detects(code, e)
        if not result:
            raise UndetectableError(f"error {label!r} is not detectable: {result.detail}")
    pauli_obs = pauli_normalizer_generators(code)
    classes = pauli_syndrome_partition(code, errors, pauli_obs)
    found: list[Type4Observable] = []
    refinements: list[list[RefinementStep]] = []
    unresolved: list[UnresolvedSubset] = []
    for ci, cls in enumerate(classes):
        steps: list[RefinementStep] = []
        queue = deque([cls.members]) if len(cls.members) > 1 else deque()
        while queue:
            members = queue.popleft()
            sub = errors.subset(members)
            chosen: int | None = None
            signs: dict[int, int] = {}
            for oi, obs in enumerate(found):
                if not is_decoding_observable(code, sub, obs):
                    continue
                trial = {
                    i: eigenvalue_on_error(code, obs, errors.errors[i])
                    for i in members
                }
                if len(set(trial.values())) > 1:
                    chosen, signs = oi, trial
                    break
            if chosen is None:
                obs = search_type4(code, sub, mode=mode, workers=workers)
                if obs is None:
                    unresolved.append(
                        UnresolvedSubset(ci, members, search_space_size(code, sub, mode))
                    )
                    continue
                found.append(obs)
                chosen = len(found) - 1
                signs = {
                    i: eigenvalue_on_error(code, obs, errors.errors[i])
                    for i in members
                }
                assert len(set(signs.values())) > 1, "search returned a non-splitting observable"
            steps.append(RefinementStep(chosen, members, signs))
            plus = [i for i in members if signs[i] == 1]
            minus = [i for i in members if signs[i] == -1]
            for group in (plus, minus):
                if len(group) > 1:
                    queue.append(group)
        refinements.append(steps)
    return DecodingPlan(
        n=code.n,
        mode=mode,
        code_sha256=code_fingerprint(code),
        error_labels=list(errors.labels),
        error_paulis=[str(e) for e in errors.errors],
        pauli_observables=pauli_obs,
        classes=classes,
        type4_observables=found,
        refinements=refinements,
        unresolved=unresolved,
    )
