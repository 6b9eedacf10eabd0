#ifndef DIRACLAB_SPECIAL_HPP
#define DIRACLAB_SPECIAL_HPP

#include <array>
#include <functional>

namespace diraclab {

// Complementary error function, 2/sqrt(pi) * integral_x^inf exp(-s^2) ds.
// Absolute error <= 1e-13 for |x| <= 30.  Power series for |x| <= 2, a
// continued fraction beyond, reflection for negative arguments.
double erfc(double x);

// erf(x) = 1 - erfc(x).
double erf(double x);

// Scaled complement, erfcx(x) = exp(x^2) * erfc(x).  Stable for large
// positive x (no underflow in the erfc factor); for x < 0 it grows like
// 2*exp(x^2) and overflows near x = -27.
double erfcx(double x);

// Adaptive Gauss-Kronrod (7,15) quadrature of f over [a, b] with interval
// bisection.  The local acceptance test is |K15 - G7| <= tol on each
// subinterval (tol halves with each split).  Throws std::runtime_error on
// non-convergence (recursion depth exhausted).
double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double tol);

// 16-point Gauss-Legendre rule on [-1, 1]: positive abscissae and weights,
// for composite fixed-order quadrature of smooth integrands.
inline constexpr std::array<double, 8> kGL16Nodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> kGL16Weights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

// Composite 16-point Gauss-Legendre quadrature of f over [a, b] using
// `panels` equal subintervals.
double gl16_integrate(const std::function<double(double)>& f, double a,
                      double b, int panels);

}  // namespace diraclab

#endif
