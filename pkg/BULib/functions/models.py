from ..polynomial import Coefficients, Generator, Monomial, GradedPolynomial
from ..ring import RewriteRule, RingPresentation
from ..blowup import PresentedModel, FormalGysinModel


def pointRing(mode=Coefficients.INTEGERS):
    return RingPresentation(generators=[], dimension=0, integrals={Monomial.one(): 1}, label="point", mode=mode)


def projectiveSpaceRing(n, mode=Coefficients.INTEGERS, name=None):
    """H*(CP^n) = Z[h]/(h^(n+1)), or H*(RP^n; Z/2) = Z/2[a]/(a^(n+1)) in Mod2 mode."""
    real = mode is Coefficients.MOD2
    g = Generator(name or ("a" if real else "h"), mode.step)
    return RingPresentation(
        generators=[g],
        dimension=mode.step * n,
        rules=[RewriteRule(g, n + 1, GradedPolynomial.zero(mode))],
        integrals={Monomial([(g, n)]): 1},
        label=f"{'RP' if real else 'CP'}^{n}",
        mode=mode)


def projectiveSpaceClass(ring, n):
    """c(CP^n) = (1 + h)^(n+1); the same expression gives w(RP^n)."""
    h = GradedPolynomial.fromGenerator(ring.generators[0], ring.mode)
    return ring.normalForm((1 + h) ** (n + 1))


def pointInProjectiveSpaceModel(n, mode=Coefficients.INTEGERS):
    """A point in CP^n (RP^n): i* kills h, i^!(1) is the top power, the normal bundle is trivial of rank n."""
    ring = projectiveSpaceRing(n, mode)
    h = ring.generators[0]
    n_ring = pointRing(mode)
    model = PresentedModel(
        ring=ring,
        total_chern=projectiveSpaceClass(ring, n),
        n_ring=n_ring,
        n_chern=n_ring.one(),
        codim=n,
        i_star={h: GradedPolynomial.zero(mode)},
        i_shriek={Monomial.one(): GradedPolynomial.fromGenerator(h, mode, n)})
    return model, []


def linearSubspaceModel(n, k, mode=Coefficients.INTEGERS):
    """Linear CP^k in CP^n (RP^k in RP^n): i*h = h_N, i^!(h_N^j) = h^(j+n-k), c(E) = (1 + h_N)^(n-k)."""
    if not 0 <= k < n:
        raise ValueError(f"A linear subspace of dimension {k} in {n}-space needs 0 <= k < n.")
    real = mode is Coefficients.MOD2
    ring = projectiveSpaceRing(n, mode)
    n_ring = projectiveSpaceRing(k, mode, name="aN" if real else "hN")
    h, hN = ring.generators[0], n_ring.generators[0]
    codim = n - k

    normal = n_ring.normalForm((1 + GradedPolynomial.fromGenerator(hN, mode)) ** codim)
    e_classes = [normal.degreePart(mode.step * i) for i in range(1, codim + 1)]
    model = PresentedModel(
        ring=ring,
        total_chern=projectiveSpaceClass(ring, n),
        n_ring=n_ring,
        n_chern=projectiveSpaceClass(n_ring, k),
        codim=codim,
        i_star={h: GradedPolynomial.fromGenerator(hN, mode)},
        i_shriek={Monomial([(hN, j)]): GradedPolynomial.fromGenerator(h, mode, j + codim) for j in range(k + 1)})
    return model, e_classes


def formalBaseRing(dimension, rank, mode=Coefficients.INTEGERS):
    """Free ring on c_k(N) (named n1, n2, ...) and c_i(E) (e1, ..., er), cut off above ``dimension``."""
    step = mode.step
    gens = [Generator(f"n{k}", step * k, "N") for k in range(1, dimension // step + 1)]
    gens += [Generator(f"e{i}", step * i, "N") for i in range(1, rank + 1)]
    return RingPresentation(generators=gens, dimension=dimension, label="N (formal)", mode=mode)


def formalGysinModel(dimension, n_dimension, rank, mode=Coefficients.INTEGERS, e_classes=None):
    """Generic M of the given dimension containing a generic N; ``e_classes`` default to e1, ..., er.

    ``e_classes`` may instead be a callable that receives the base ring and returns the classes,
    which lets callers parse classes against the generators created here.
    """
    n_ring = formalBaseRing(n_dimension, rank, mode)
    if e_classes is None:
        e_classes = [n_ring.genElement(f"e{i}") for i in range(1, rank + 1)]
    elif callable(e_classes):
        e_classes = list(e_classes(n_ring))
    n_chern = n_ring.one() + sum((n_ring.genElement(g.name) for g in n_ring.generators if g.name.startswith("n")),
                                 n_ring.zero())
    model = FormalGysinModel(dimension=dimension, n_ring=n_ring, n_chern=n_chern, codim=rank,
                             e_classes=list(e_classes))
    return model, list(e_classes)
