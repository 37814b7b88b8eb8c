"""Decomposition structure of twisted tensor products.

When X uses one set of variables and Y uses a disjoint set, killing either
set of variables collapses X (x) Y onto a direct sum of shifted copies of the
surviving factor, and every morphism between such tensors collapses blockwise
along with it.  This module implements that reduction calculus and the
indecomposability bookkeeping built on top of it:

* `reduce_tensor_witness` produces the direct-sum form of the reduced tensor
  together with an explicit isomorphism witness.  Killing the left factor's
  variables leaves, at every slot p, the literal block-diagonal matrix with
  blocks zeta^i * kron(I_n, (T^-i Y).mats[p]) for i = 0..d-1, so the witness
  is the identity.  Killing the right factor's variables leaves the same
  cyclic block matrix at every slot; the constant components of the swap
  isomorphism carry it onto the reduction of Y (x)_{zeta^-1} X, which is in
  direct-sum form.
* `reduce_morphism_blocks` slices a morphism of tensors into the d x d grid
  of morphisms between those shifted copies.  With the left variables killed,
  block (i, j) has components sigma_p(i, j) (the same block position at every
  slot); with the right variables killed the position rotates with the slot:
  block (i, j) has components sigma_p((p - i) % d, (p - j) % d), acting
  between the untwisted realizations kron((T^-j X).mats[p], I_m).
* summand-count bounds: a tensor of reduced indecomposables has at most d*r
  indecomposable summands (r = gcd of the ranks), and at most r when neither
  factor is isomorphic to any nonzero shift of itself.
* strong-indecomposability certificates: rank-one factorizations with
  pairwise coprime monomial entries are strongly indecomposable (axiom case),
  and the property propagates through tensor products over disjoint variable
  sets.  Certificates are explicit trees that re-verify on demand; their
  consequences (indecomposability, shift-inequivalence, indecomposable
  cokernels, scalar residue endomorphisms) are emitted as claims, not
  recomputed facts.

Nothing here decides strong indecomposability from the definition -- that
quantifies over all pairs of homomorphisms over the power-series ring.  The
constant-term shadow of the definition is available as a spot-check
(`constant_term_spot_check`), and non-isomorphism to shifts can be refuted
soundly at jet level (`jet_refute_shift_iso`), but a certificate is only ever
produced from the axiom or by propagation.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd

from .cyclo import CycloElem
from .errors import MatfacError, Refusal
from .factorization import MatFac, PresentationMatrix
from .linalg import Matrix
from .morphisms import Morphism, admits_invertible_combination, hom_space_jets
from .rings import monomial_coprime
from .tensor import TensorMatFac, swap_witness, tensor


def variable_support(x: MatFac) -> frozenset[str]:
    """All variable names appearing in the factors or in f."""
    used = set(x.f.variables_used())
    for m in x.mats:
        for row in m.rows:
            for p in row:
                used |= p.variables_used()
    return frozenset(used)


def _require_disjoint(x: MatFac, y: MatFac):
    shared = variable_support(x) & variable_support(y)
    if shared:
        raise MatfacError(
            f"factors must use disjoint variables; both use {sorted(shared)}"
        )


# -- reduction of tensors ------------------------------------------------------


def _contiguous_copies(y: MatFac, copies: int, unit: CycloElem, i: int) -> MatFac:
    """copies-fold direct sum of the unit-scaled shift T^-i Y, stored
    contiguously: slot p is unit * kron(I_copies, (T^-i Y).mats[p])."""
    ring = y.ring
    eye = Matrix.identity(ring, copies)
    scalar = ring.scalar(unit)
    shifted = y.shift(-i)
    return MatFac(ring, y.f, [eye.kron(m).scale(scalar) for m in shifted.mats])


def _interleaved_copies(x: MatFac, copies: int, i: int) -> MatFac:
    """copies-fold direct sum of T^-i X with the copies interleaved:
    slot p is kron((T^-i X).mats[p], I_copies)."""
    ring = x.ring
    eye = Matrix.identity(ring, copies)
    shifted = x.shift(-i)
    return MatFac(ring, x.f, [m.kron(eye) for m in shifted.mats])


@dataclass
class ReductionReport:
    side: str
    killed: tuple[str, ...]
    sum_matches_reduction: bool
    witness_is_isomorphism: bool
    reduction_validates: bool
    sum_validates: bool

    @property
    def passed(self) -> bool:
        return (
            self.sum_matches_reduction
            and self.witness_is_isomorphism
            and self.reduction_validates
            and self.sum_validates
        )


def reduce_tensor_witness(x: MatFac, y: MatFac, zeta: CycloElem, side: str):
    """Reduce X (x)_zeta Y modulo one factor's variables and exhibit the
    resulting direct sum of shifts of the other factor.

    side='left' sets the left factor's variables to zero (X must be reduced);
    the result is sum_{i=0}^{d-1} of n copies of zeta^i * T^-i Y, and the
    reduced tensor is that sum verbatim, so the witness is the identity.
    side='right' sets the right factor's variables to zero (Y must be
    reduced); the result is sum_i of m copies of zeta^-i * T^-i X, reached
    through the constant components of the swap isomorphism.

    Returns (witness, report): witness maps the reduced tensor onto the
    direct sum, and the report records the exact checks performed.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    _require_disjoint(x, y)
    t = tensor(x, y, zeta)
    if side == "left":
        if not x.is_reduced():
            raise MatfacError("left reduction requires the left factor to be reduced")
        kill = variable_support(x)
        reduced = t.reduce_mod_vars(kill)
        total = None
        for i in range(t.d):
            block = _contiguous_copies(y, x.n, zeta**i, i)
            total = block if total is None else total.direct_sum(block)
        witness = Morphism(
            source=reduced,
            target=total,
            comps=[Matrix.identity(t.ring, t.n)] * t.d,
        )
        matches = reduced == total
    else:
        if not y.is_reduced():
            raise MatfacError("right reduction requires the right factor to be reduced")
        kill = variable_support(y)
        reduced = t.reduce_mod_vars(kill)
        zinv = zeta.inverse()
        total = None
        for i in range(t.d):
            block = _contiguous_copies(x, y.n, zinv**i, i)
            total = block if total is None else total.direct_sum(block)
        # The swap components are constant matrices, so they survive the
        # reduction unchanged and still intertwine the reduced factors.
        swap = swap_witness(x, y, zeta)
        witness = Morphism(source=reduced, target=total, comps=swap.comps)
        matches = tensor(y, x, zinv).reduce_mod_vars(kill) == total
    report = ReductionReport(
        side=side,
        killed=tuple(sorted(kill)),
        sum_matches_reduction=matches,
        witness_is_isomorphism=witness.is_isomorphism(),
        reduction_validates=reduced.validate().passed,
        sum_validates=total.validate().passed,
    )
    return witness, report


# -- reduction of morphisms ----------------------------------------------------


def _tensor_factors(t: MatFac):
    if not isinstance(t, TensorMatFac):
        raise MatfacError(
            "morphism endpoints must be tensor products built by tensor() "
            "(the factors are needed to form the reduced blocks)"
        )
    return t.left, t.right, t.zeta


def reduce_morphism_blocks(alpha: Morphism, side: str) -> list[list[Morphism]]:
    """Slice a morphism of tensor products into the d x d block grid of
    morphisms between shifted copies of the surviving factors.

    Entry [i][j] maps the j-th source summand to the i-th target summand.
    With side='left' (left variables killed, left factors reduced) the
    summands are the zeta-scaled contiguous copies of the right factors and
    block (i, j) has components sigma_p(i, j).  With side='right' the
    summands are the untwisted interleaved copies of the left factors and
    block (i, j) has components sigma_p((p - i) % d, (p - j) % d).

    Every returned block is checked against the intertwining law over the
    reduced ring.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if not alpha.is_morphism():
        raise MatfacError("input is not a morphism")
    xs, ys, zs = _tensor_factors(alpha.source)
    xt, yt, zt = _tensor_factors(alpha.target)
    if zs != zt:
        raise MatfacError("source and target tensors use different twist scalars")
    zeta = zs
    d = alpha.source.d
    _require_disjoint(xs, ys)
    _require_disjoint(xt, yt)
    if side == "left":
        if not (xs.is_reduced() and xt.is_reduced()):
            raise MatfacError("left reduction requires both left factors reduced")
        kill = variable_support(xs) | variable_support(xt)
        sources = [_contiguous_copies(ys, xs.n, zeta**j, j) for j in range(d)]
        targets = [_contiguous_copies(yt, xt.n, zeta**i, i) for i in range(d)]
    else:
        if not (ys.is_reduced() and yt.is_reduced()):
            raise MatfacError("right reduction requires both right factors reduced")
        kill = variable_support(ys) | variable_support(yt)
        sources = [_interleaved_copies(xs, ys.n, j) for j in range(d)]
        targets = [_interleaved_copies(xt, yt.n, i) for i in range(d)]
    reduced = [c.map(lambda e: e.reduce_mod_vars(kill)) for c in alpha.comps]
    hs, ws = xt.n * yt.n, xs.n * ys.n

    def sub(mat: Matrix, bi: int, bj: int) -> Matrix:
        return mat.submatrix(
            range(bi * hs, (bi + 1) * hs), range(bj * ws, (bj + 1) * ws)
        )

    blocks: list[list[Morphism]] = []
    for i in range(d):
        row = []
        for j in range(d):
            if side == "left":
                comps = [sub(reduced[p], i, j) for p in range(d)]
            else:
                comps = [sub(reduced[p], (p - i) % d, (p - j) % d) for p in range(d)]
            block = Morphism(source=sources[j], target=targets[i], comps=comps)
            if not block.is_morphism():
                raise MatfacError(
                    f"reduced block ({i},{j}) fails the intertwining law"
                )
            row.append(block)
        blocks.append(row)
    return blocks


# -- summand-count bounds ------------------------------------------------------


@dataclass(frozen=True)
class DecompBound:
    """Upper bound on the number of indecomposable summands of a tensor.

    bound = d*r in general and r when both asymmetry flags are certified
    (r = gcd of the factor ranks).  min_summand_rank is the complementary
    consequence: every indecomposable summand has rank at least n*m/r, and at
    least d*n*m/r in the asymmetric case.
    """

    n: int
    m: int
    d: int
    r: int
    bound: int
    basis: str  # "general" or "fully-asymmetric"
    hypotheses: tuple[str, ...]
    min_summand_rank: int


def summand_bound(x: MatFac, y: MatFac, sym_flags=(False, False)) -> DecompBound:
    """Bound the indecomposable-summand count of X (x) Y.

    Both factors must be reduced; their indecomposability is the caller's
    assertion and is recorded in the hypotheses rather than checked.
    sym_flags = (x_shifts_refuted, y_shifts_refuted) states that T^i X is not
    isomorphic to X for every i != 0 (and likewise for Y); certify the flags
    with jet_refute_shift_iso.  Both flags together sharpen the bound from
    d*r to r.
    """
    if not x.is_reduced():
        raise MatfacError("summand bound requires a reduced left factor")
    if not y.is_reduced():
        raise MatfacError("summand bound requires a reduced right factor")
    x_flag, y_flag = bool(sym_flags[0]), bool(sym_flags[1])
    n, m, d = x.n, y.n, x.d
    r = gcd(n, m)
    hyps = [
        "both factors reduced (checked)",
        "both factors indecomposable (caller-asserted)",
    ]
    if x_flag and y_flag:
        hyps.append("no nonzero shift of either factor is isomorphic to it")
        return DecompBound(
            n=n,
            m=m,
            d=d,
            r=r,
            bound=r,
            basis="fully-asymmetric",
            hypotheses=tuple(hyps),
            min_summand_rank=d * n * m // r,
        )
    return DecompBound(
        n=n,
        m=m,
        d=d,
        r=r,
        bound=d * r,
        basis="general",
        hypotheses=tuple(hyps),
        min_summand_rank=n * m // r,
    )


# -- strong-indecomposability certificates ---------------------------------------


@dataclass(frozen=True)
class VarSplit:
    """Disjointness evidence: which variables each child certificate owns."""

    left_vars: frozenset[str]
    right_vars: frozenset[str]

    def as_dict(self) -> dict:
        return {
            "left": sorted(self.left_vars),
            "right": sorted(self.right_vars),
        }


@dataclass(frozen=True)
class AxiomCoprimeRankOne:
    """Rank-one basis case: pairwise coprime monomial entries."""

    entries: tuple

    def as_dict(self) -> dict:
        return {
            "kind": "coprime-rank-one",
            "entries": [str(e) for e in self.entries],
        }


@dataclass(frozen=True)
class TensorPropagation:
    """Propagation case: tensor of two certified subjects over disjoint
    variables, with the twist scalar that built the subject."""

    left: "StrongIndCert"
    right: "StrongIndCert"
    split: VarSplit
    zeta: CycloElem

    def as_dict(self) -> dict:
        return {
            "kind": "tensor-propagation",
            "zeta": str(self.zeta),
            "split": self.split.as_dict(),
            "left": self.left.as_dict(),
            "right": self.right.as_dict(),
        }


@dataclass(frozen=True)
class StrongIndCert:
    """Certificate that `subject` is strongly indecomposable.

    The certificate is a tree: leaves are coprime rank-one axioms, inner
    nodes are disjoint-variable tensor propagations.  `problems()` re-verifies
    the whole tree and returns a list of violations (empty means valid).
    """

    subject: MatFac
    basis: AxiomCoprimeRankOne | TensorPropagation

    def problems(self) -> list[str]:
        out: list[str] = []
        if not self.subject.validate().passed:
            out.append("subject does not validate")
        if isinstance(self.basis, AxiomCoprimeRankOne):
            if self.subject.n != 1:
                out.append(f"axiom subject must have rank 1, has {self.subject.n}")
                return out
            actual = tuple(m[0, 0] for m in self.subject.mats)
            if actual != self.basis.entries:
                out.append("recorded entries differ from the subject's entries")
            if not self.subject.is_reduced():
                out.append("axiom subject is not reduced")
            try:
                if not monomial_coprime(self.basis.entries):
                    out.append("entries are not pairwise coprime")
            except Refusal as exc:
                out.append(str(exc))
        else:
            prop = self.basis
            lsup = variable_support(prop.left.subject)
            rsup = variable_support(prop.right.subject)
            if lsup != prop.split.left_vars or rsup != prop.split.right_vars:
                out.append("recorded variable split differs from the subjects' supports")
            if lsup & rsup:
                out.append(f"children share variables {sorted(lsup & rsup)}")
            rebuilt = tensor(prop.left.subject, prop.right.subject, prop.zeta)
            if rebuilt != self.subject:
                out.append("subject is not the tensor of the child subjects")
            out.extend(f"left: {p}" for p in prop.left.problems())
            out.extend(f"right: {p}" for p in prop.right.problems())
        return out

    def as_dict(self) -> dict:
        return {
            "rank": self.subject.n,
            "d": self.subject.d,
            "f": str(self.subject.f),
            "basis": self.basis.as_dict(),
        }


def coprime_rank_one_cert(x: MatFac) -> StrongIndCert:
    """Certify a rank-one factorization with pairwise coprime monomial
    entries as strongly indecomposable.

    Refuses when the entries are not pairwise coprime; coprimality of
    non-monomial entries is not decided here (UndecidableError).
    """
    if x.n != 1:
        raise MatfacError(f"certificate needs a rank-one factorization, got rank {x.n}")
    if not x.validate().passed:
        raise MatfacError("factorization does not validate")
    if not x.is_reduced():
        raise MatfacError("certificate needs a reduced factorization")
    entries = tuple(m[0, 0] for m in x.mats)
    if not monomial_coprime(entries):
        raise Refusal(
            "entries are not pairwise coprime: "
            + ", ".join(str(e) for e in entries)
        )
    return StrongIndCert(subject=x, basis=AxiomCoprimeRankOne(entries=entries))


def propagate_strong_ind(
    cx: StrongIndCert, cy: StrongIndCert, zeta: CycloElem
) -> StrongIndCert:
    """Tensor two certified subjects over disjoint variables; the tensor
    product is again strongly indecomposable."""
    lsup = variable_support(cx.subject)
    rsup = variable_support(cy.subject)
    if lsup & rsup:
        raise MatfacError(
            f"certified subjects must use disjoint variables; both use "
            f"{sorted(lsup & rsup)}"
        )
    subject = tensor(cx.subject, cy.subject, zeta)
    split = VarSplit(left_vars=lsup, right_vars=rsup)
    return StrongIndCert(
        subject=subject,
        basis=TensorPropagation(left=cx, right=cy, split=split, zeta=zeta),
    )


@dataclass(frozen=True)
class StructuralClaim:
    claim: str
    index: int | None
    detail: str


@dataclass
class ConsequenceReport:
    subject: MatFac
    claims: tuple[StructuralClaim, ...]
    cokernels: dict[int, PresentationMatrix] = dc_field(default_factory=dict)


def strong_ind_consequences(cert: StrongIndCert) -> ConsequenceReport:
    """The structural consequences of a (re-verified) certificate.

    The claims are emitted, not recomputed: indecomposability of the subject,
    inequivalence with every nonzero shift, indecomposability of each factor's
    cokernel over the hypersurface ring, and scalar residue of the
    endomorphism rings.
    """
    problems = cert.problems()
    if problems:
        raise MatfacError("invalid certificate: " + "; ".join(problems))
    x = cert.subject
    d = x.d
    claims = [
        StructuralClaim(
            claim="indecomposable",
            index=None,
            detail="the subject admits no nontrivial direct-sum decomposition",
        )
    ]
    for i in range(1, d):
        claims.append(
            StructuralClaim(
                claim="shift_inequivalent",
                index=i,
                detail=f"T^{i} of the subject is not isomorphic to the subject",
            )
        )
    cokernels = {}
    for k in range(d):
        cokernels[k] = x.cokernel_presentation(k, 1)
        claims.append(
            StructuralClaim(
                claim="cokernel_indecomposable",
                index=k,
                detail=(
                    f"cok phi_{k} is an indecomposable maximal Cohen-Macaulay "
                    "module over the hypersurface ring of f"
                ),
            )
        )
    claims.append(
        StructuralClaim(
            claim="endomorphism_residue_scalar",
            index=None,
            detail=(
                "the endomorphism ring of the subject, and of each cok phi_k, "
                "is scalar modulo its radical"
            ),
        )
    )
    return ConsequenceReport(subject=x, claims=tuple(claims), cokernels=cokernels)


# -- jet refutation of shift isomorphism ----------------------------------------


@dataclass
class ShiftRefutation:
    """Outcome of the jet-level search for isomorphisms X -> T^i X.

    refuted[i] is True when no jet morphism with invertible constant part
    exists at the stated precision -- a sound proof that X and T^i X are not
    isomorphic.  False means undetermined (a candidate exists at this
    precision), never a proof of isomorphism.
    """

    subject: MatFac
    precision: int
    refuted: dict[int, bool]

    @property
    def all_refuted(self) -> bool:
        return all(self.refuted.values())


def jet_refute_shift_iso(x: MatFac, precision: int = 1) -> ShiftRefutation:
    """For each i != 0, try to refute X ~ T^i X at the given jet precision."""
    flags = {}
    for i in range(1, x.d):
        hb = hom_space_jets(x, x.shift(i), precision)
        flags[i] = not admits_invertible_combination(hb)
    return ShiftRefutation(subject=x, precision=precision, refuted=flags)


# -- indecomposability of tensors with a rank-one factor -------------------------


@dataclass
class IndecomposabilityReport:
    subject: MatFac
    route: str
    hypotheses: tuple[str, ...]
    claim: str = "indecomposable"


def tensor_indecomposable(
    x: MatFac,
    y: MatFac,
    zeta: CycloElem,
    *,
    symmetry: Morphism | None = None,
    asymmetry: ShiftRefutation | None = None,
) -> IndecomposabilityReport:
    """Certify that X (x)_zeta Y is indecomposable, via one of two routes.

    symmetry route: X is rank one with pairwise coprime monomial entries, and
    `symmetry` is an isomorphism between Y and its first shift (either
    direction).  asymmetry route: Y is rank one (any entries) and `asymmetry`
    is a ShiftRefutation for X with every nonzero shift refuted.

    In both routes the factors must use disjoint variables and be reduced;
    their indecomposability is the caller's assertion, recorded in the
    hypotheses.  Pass exactly one of symmetry= / asymmetry=.
    """
    if (symmetry is None) == (asymmetry is None):
        raise ValueError(
            "pass exactly one of symmetry= (isomorphism between Y and TY) or "
            "asymmetry= (ShiftRefutation for X)"
        )
    _require_disjoint(x, y)
    hyps = [
        "factors use disjoint variables (checked)",
        "both factors indecomposable (caller-asserted)",
    ]
    if symmetry is not None:
        cert = coprime_rank_one_cert(x)  # raises on any hypothesis failure
        if not y.is_reduced():
            raise MatfacError("the symmetric factor must be reduced")
        ty = y.shift(1)
        endpoints = {symmetry.source, symmetry.target}
        if endpoints != {y, ty}:
            raise MatfacError(
                "symmetry witness must connect the right factor and its first shift"
            )
        if not symmetry.is_isomorphism():
            raise MatfacError("symmetry witness is not an isomorphism")
        hyps.append(
            "left factor is rank one with pairwise coprime monomial entries: "
            + ", ".join(str(e) for e in cert.basis.entries)
        )
        hyps.append("right factor is isomorphic to its first shift (verified witness)")
        route = "symmetric-partner"
    else:
        if y.n != 1:
            raise MatfacError("the asymmetry route needs a rank-one right factor")
        if not y.is_reduced():
            raise MatfacError("the rank-one factor must be reduced")
        if not x.is_reduced():
            raise MatfacError("the asymmetric factor must be reduced")
        if asymmetry.subject != x:
            raise MatfacError("the shift refutation certifies a different factorization")
        undetermined = [i for i, ok in sorted(asymmetry.refuted.items()) if not ok]
        if undetermined:
            raise Refusal(
                "shift inequivalence undetermined for i in "
                f"{undetermined} at precision {asymmetry.precision}"
            )
        hyps.append("right factor is rank one")
        hyps.append(
            "no nonzero shift of the left factor is isomorphic to it "
            f"(jet refutation at precision {asymmetry.precision})"
        )
        route = "asymmetric-partner"
    subject = tensor(x, y, zeta)
    return IndecomposabilityReport(subject=subject, route=route, hypotheses=tuple(hyps))


# -- constant-term spot-check ----------------------------------------------------


def constant_term_spot_check(x: MatFac) -> bool:
    """Check the constant-term shadow of strong indecomposability.

    Every jet self-morphism at precision 1 must have all components equal to
    one common scalar at the origin, and every jet morphism to a nonzero
    shift must vanish at the origin.  A certificate subject failing this is a
    bug; passing it is evidence, not proof, of strength.
    """
    field = x.ring.field
    ident = Matrix.identity(field, x.n)
    for tup in hom_space_jets(x, x, 1).basis:
        consts = [c.constant_terms() for c in tup]
        xi = consts[0][0, 0]
        scaled = ident.scale(xi)
        if any(c != scaled for c in consts):
            return False
    for i in range(1, x.d):
        for tup in hom_space_jets(x, x.shift(i), 1).basis:
            if any(not c.constant_terms().is_zero() for c in tup):
                return False
    return True
