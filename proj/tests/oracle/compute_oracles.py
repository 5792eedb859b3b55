"""Independent mpmath evaluations frozen into the C++ tests.

Run: python3 tests/oracle/compute_oracles.py
"""
import mpmath as mp

mp.mp.dps = 40


def f(s):
    return s / (1 + mp.sqrt((1 - s) * (1 + s)))


def beta_density(a, b):
    return lambda v: v ** (a - 1) * (1 - v) ** (b - 1) / mp.beta(a, b)


def tail_gamma1(n, dens):
    # gamma = 1: P(D >= n) = E[M(tau_n)] = E[f(pi)^n]
    return mp.quad(lambda v: f(v) ** n * dens(v), [0, 0.5, 0.9, 0.99, 0.999, 1])


def tail_logcorr_gamma1(n, d):
    # v = 1 - e^-w; the mass near v = 1 decays only like 1/log, so quadrature
    # in v misses it.
    g = lambda w: f(1 - mp.exp(-w)) ** n * d * (1 + w) ** (-1 - d)
    return mp.quad(g, [0, 1, 10, 100, 1000, mp.inf])


def theta(c0):
    return (1 - mp.ncdf(1 / mp.sqrt(c0))) / 2


def k_down_a(g, b, c0):
    return theta(c0) * mp.gamma(b) * c0 ** (-g * b)


def k_down_sup(g, b):
    x = mp.findroot(lambda x: mp.diff(lambda y: mp.log(k_down_a(g, b, mp.e ** y)), x), 0.5)
    return mp.e ** x, k_down_a(g, b, mp.e ** x)


def k_up_a(g, b):
    return 2 * g * mp.gamma(2 * b * g) * 2 ** (b * (1 - g)) * (mp.gamma(1 - 1 / (2 * g)) / mp.sqrt(mp.pi)) ** (-2 * g * b)


def k_up_b(g, b):
    return 2 * g * mp.gamma(2 * b * g) * 2 ** (-b * g) * mp.gamma(b) / (g * mp.gamma(b * g))


def first_passage_lt(n, K):
    # P(tau_n <= K), exact rational arithmetic
    total = mp.mpf(0)
    for k in range(n, K + 1, 2):
        total += mp.mpf(n) / k * mp.binomial(k, (k + n) // 2) / mp.mpf(2) ** k
    return total


if __name__ == "__main__":
    print("tail n=1 Beta(1,1)", tail_gamma1(1, beta_density(1, 1)), "closed", 1 - mp.log(2))
    print("tail n=5 Beta(1,0.5)", tail_gamma1(5, beta_density(1, 0.5)))
    print("tail n=3 LogCorrected(1)", tail_logcorr_gamma1(3, 1))
    print("gen_func(0.7)", f(mp.mpf("0.7")))
    print("theta(1)", theta(1))
    for g, b in [(1, 0.5), (2, 0.4), (2, 0.15)]:
        c, v = k_down_sup(g, b)
        print("K_down_sup", g, b, "c0*", c, "value", v, "K_up", k_up_a(g, b))
    print("K_up B (0.5,1)", k_up_b(0.5, 1), "K_up B (1,0.5)", k_up_b(1, 0.5))
    print("P(tau_100 < 1e4)", first_passage_lt(100, 9999))
    print("tau1 survival t=1e4 scaled", mp.sqrt(10**4) * mp.binomial(10**4, 5000) / mp.mpf(2) ** 10**4)
    print("laplace target gamma=2", mp.gamma(0.75) * mp.sqrt(2 / mp.pi))
    print("lgamma(0.3)", mp.loggamma(0.3), "lgamma(123.4)", mp.loggamma(123.4))
    print("stable neg moment 0.5,0.5", mp.gamma(1) / (0.5 * mp.gamma(0.5)))
    print("true limit gamma=1 beta=0.5", mp.gamma(0.5) * mp.sqrt(2) ** 1 * mp.gamma(1) / mp.sqrt(mp.pi))
