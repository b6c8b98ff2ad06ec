"""Frozen reference values for the test suite.

Every constant below was produced by an mpmath session at 50 decimal digits,
by routes independent of the package internals:

  - gamma / Bessel values: mpmath.gamma, mpmath.besselj;
  - volume densities: the product formula 2^(m_v+m_z) sinh^(m_v+m_z)(s/2)
    cosh^(m_z)(s/2) evaluated in extended precision;
  - inversion-density values: the gamma-quotient formula evaluated through
    mpmath.gamma (no Lanczos, no reflection shortcuts);
  - spherical-function values: the Gauss hypergeometric representation
    2F1(Q/2 + i*lam, Q/2 - i*lam; n/2; -sinh^2(s/2)), a route that never
    touches the radial ODE used by the implementation;
  - flat/hyperbolic closed forms: elementary integrals checked against
    mpmath.quad to ~50 digits;
  - tail integrals of oscillatory kernels: mpmath.quad on a rotated
    (absolutely convergent) contour.

Values are exact to the printed double precision; comparisons in the tests
should allow for the implementation's own quadrature noise, not for any
uncertainty in these numbers.
"""

# gamma function, keyed by the evaluation point
GAMMA = {
    (2.5, 0.0): 1.329340388179137 + 0j,
    (0.5, 3.0): 0.021445670552430646 + 0.006865364837261678j,
    # purely imaginary arguments with large modulus exercise the reflection
    # path where a dropped factor flips the overall sign
    (0.0, 20.0): 1.837148523726488e-15 + 1.2596233355496348e-14j,
    (0.0, 50.0): 2.6317321061976804e-35 + 8.164649354653339e-36j,
    (-1.5, 0.5): 0.9379166627878851 + 0.34920566814780485j,
    (0.0, 0.6): -0.34365539627242725 - 1.2285940379998224j,
}

# Bessel J_nu(x), keyed by (nu, x)
BESSEL_J = {
    (0.5, 2.0): 0.5130161365618278,
    (1.0, 2.0): 0.5767248077568734,
    (1.0, 20.0): 0.06683312417585005,
    (1.5, 0.5): 0.0917016996256513,
}

# volume density A(s), keyed by (m_v, m_z, s); the hyperbolic space uses the
# same product formula at (0, 2) and equals sinh^2 there
DENSITY = {
    (2, 1, 1.0): 1.2764580205594158,
    (4, 3, 2.0): 1456.0000838807985,
    (0, 2, 1.0): 1.3810978455418157,
}

# inversion-kernel values c(lam) and the derived density 1/|c|^2,
# keyed by (m_v, m_z, lam)
C_FUNCTION = {
    (2, 1, 1.0): -0.68462105468406 - 0.8943081215347137j,
    (2, 1, 25.0): -0.006351079309349577 - 0.006414914065628791j,
    (4, 3, 2.0): -1.012917895586243 + 3.459327507347029j,
    (0, 2, 3.0): -0.3333333333333333j,
}
INV_C_SQUARED = {
    (2, 1, 1.0): 0.7883370237342906,
    (2, 1, 25.0): 12271.846303085129,
    (4, 3, 2.0): 0.0769648186960736,
    (0, 2, 3.0): 9.0,
}

# spherical-function values via the hypergeometric route,
# keyed by (m_v, m_z, lam, s)
PHI = {
    (2, 1, 0.7, 1.3): 0.7336030578256447,
    (2, 1, 2.0, 3.0): -0.03517954726279712,
    (2, 1, 5.0, 0.4): 0.5653406196631465,
    (4, 3, 1.1, 0.8): 0.7447267405661816,
    (4, 3, 3.0, 2.0): 0.0021224789289433685,
}

# hyperbolic closed pair: fhat(lam) = exp(-lam^2) inverts to
# f(s) = s exp(-s^2/4) / (2 sqrt(pi) sinh s); keyed by s
H3_GAUSSIAN_INVERSE = {
    0.7: 0.23029713029909213,
    2.0: 0.05722683681490395,
}

# int_L^inf e^{i lam ds} (lam^2 + q)^{-1/4} dlam, keyed by (L, ds, q);
# q = 1 and q = 6.25 are the squared half-exponents of the tested geometries
OSC_EQUAL_TIMES = {
    (1.0, 1.0, 1.0): -0.5453430297036818 + 0.5504132912354749j,
    (0.5, 2.0, 6.25): -0.2630685580516739 + 0.1796877170093464j,
}

# hyperbolic norms of exp(-lam^2): weighted density (lam^2+1)^a e^{-2 lam^2}
# lam^2 integrated over (0, inf), square-rooted; no inversion constant
SOBOLEV_H3_GAUSSIAN_QUARTER = 0.4224160947173404
L2_H3_GAUSSIAN = 0.3958083717715399
