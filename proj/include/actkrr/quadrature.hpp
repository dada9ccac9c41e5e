#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>
#include <utility>

namespace actkrr::quad {

namespace detail {

// 8-point Gauss-Legendre on [-1,1]
inline constexpr double kGlNode[4] = {
    0.18343464249564980, 0.52553240991632899, 0.79666647741362674,
    0.96028985649753623};
inline constexpr double kGlWeight[4] = {
    0.36268378337836198, 0.31370664587788729, 0.22238103445337447,
    0.10122853629037626};

// 15-point Kronrod nodes with embedded 7-point Gauss rule (QUADPACK qk15)
inline constexpr double kGkNode[8] = {
    0.99145537112081264, 0.94910791234275852, 0.86486442335976907,
    0.74153118559939444, 0.58608723546769113, 0.40584515137739717,
    0.20778495500789847, 0.0};
inline constexpr double kGkWeight[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
    0.14065325971552591, 0.16900472663926790, 0.19035057806478540,
    0.20443294007529889, 0.20948214108472782};
inline constexpr double kGWeight[4] = {
    0.12948496616886969, 0.27970539148927666, 0.38183005050511894,
    0.41795918367346938};

template <class T>
double magnitude(const T& v) {
  if constexpr (std::is_same_v<T, std::complex<double>>)
    return std::abs(v);
  else
    return std::fabs(v);
}

}  // namespace detail

// One 8-point Gauss-Legendre panel over [a,b].
template <class F>
auto panel_gl8(F&& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  using R = std::invoke_result_t<F&, double>;
  R acc = R{};
  for (int i = 0; i < 4; ++i) {
    const double x = h * detail::kGlNode[i];
    acc += detail::kGlWeight[i] * (f(c - x) + f(c + x));
  }
  return R(h * acc);
}

template <class F>
auto composite_gl8(F&& f, double a, double b, int panels) {
  using R = std::invoke_result_t<F&, double>;
  R acc = R{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) acc += panel_gl8(f, a + p * h, a + (p + 1) * h);
  return acc;
}

struct DoublingOptions {
  double rel_tol = 1e-7;
  double abs_floor = 1e-12;  // integrals below this count as converged
  int init_panels = 16;
  int max_panels = 1 << 15;
};

// Composite Gauss-Legendre with panel doubling until the relative change
// between refinements drops below rel_tol. Throws if max_panels is reached
// without convergence.
template <class F>
auto integrate_doubling(F&& f, double a, double b,
                        const DoublingOptions& opt = {}) {
  using R = std::invoke_result_t<F&, double>;
  int panels = opt.init_panels;
  R prev = composite_gl8(f, a, b, panels);
  while (panels < opt.max_panels) {
    panels *= 2;
    R cur = composite_gl8(f, a, b, panels);
    const double change = detail::magnitude<R>(cur - prev);
    const double scale = std::max(detail::magnitude<R>(cur), opt.abs_floor);
    prev = cur;
    if (change <= opt.rel_tol * scale) return prev;
  }
  throw std::runtime_error("quadrature failed to converge at " +
                           std::to_string(opt.max_panels) + " panels");
}

namespace detail {

template <class F, class R>
void gk15(F& f, double a, double b, R& value, double& err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  R kron = R{}, gauss = R{};
  for (int i = 0; i < 8; ++i) {
    const double x = h * kGkNode[i];
    const R fs = (i == 7) ? R(f(c)) : R(f(c - x) + f(c + x));
    kron += kGkWeight[i] * fs;
    if (i % 2 == 1) gauss += kGWeight[i / 2] * fs;
  }
  value = R(h * kron);
  err = magnitude<R>(R(h * (kron - gauss)));
}

template <class F, class R>
R adaptive_gk_rec(F& f, double a, double b, double tol, int depth) {
  R v;
  double e;
  gk15<F, R>(f, a, b, v, e);
  if (e <= tol || depth <= 0) return v;
  const double m = 0.5 * (a + b);
  return adaptive_gk_rec<F, R>(f, a, m, 0.5 * tol, depth - 1) +
         adaptive_gk_rec<F, R>(f, m, b, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Gauss-Kronrod 15 to an absolute tolerance.
template <class F>
auto integrate_gk(F&& f, double a, double b, double abs_tol,
                  int max_depth = 48) {
  using R = std::invoke_result_t<F&, double>;
  return detail::adaptive_gk_rec<F, R>(f, a, b, abs_tol, max_depth);
}

}  // namespace actkrr::quad
