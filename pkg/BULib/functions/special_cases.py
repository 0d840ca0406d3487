from scipy.special import comb


def pointDefectCoefficients(r, mode=None):
    """Coefficients C(r, nu) - C(r, nu-1) of eta^nu, nu = 1..r, in c(M~) - f*c(M) for a point blow-up."""
    coefficients = [int(comb(r, nu, exact=True)) - int(comb(r, nu - 1, exact=True)) for nu in range(1, r + 1)]
    if mode is not None:
        coefficients = [mode.reduce(c) for c in coefficients]
    return coefficients


def pointBlowupDefect(ctx):
    """Closed form of c(M~) - f*c(M) when N is a point, in powers of eta = -i~^!(1)."""
    if ctx.n_ring.dimension != 0:
        raise ValueError("The point blow-up formula needs N to be a point.")
    eta = -ctx.exceptionalClass()
    total = ctx.fPullback(ctx.model.zero())
    power = ctx.fPullback(ctx.model.one())
    for c in pointDefectCoefficients(ctx.r, ctx.mode):
        power = power * eta
        total = total + power * c
    return total


def firstClassFormula(ctx):
    """c_1(M~) = f*c_1(M) - (r-1) i~^!(1)."""
    return ctx.fPullback(ctx.model.chernClass(1)) - ctx.exceptionalClass() * (ctx.r - 1)


def secondClassFormula(ctx):
    """c_2(M~) = f*(c_2(M) + i^!(1)) - f*c_1(M) i~^!(1), for a normal bundle of rank 2."""
    if ctx.r != 2:
        raise ValueError(f"The second class formula needs r = 2, got r = {ctx.r}.")
    model = ctx.model
    pd_n = model.iShriek(ctx.n_ring.one())
    return ctx.fPullback(model.chernClass(2) + pd_n) - ctx.fPullback(model.chernClass(1)) * ctx.exceptionalClass()
