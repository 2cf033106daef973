#include "wmlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wmlab {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, err;
};

Panel gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kWgk[7] * fc;
  double resg = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double fsum = f(c - dx) + f(c + dx);
    resk += kWgk[i] * fsum;
    if (i % 2 == 1) resg += kWg[i / 2] * fsum;
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = resk * h;
  p.err = std::abs((resk - resg) * h);
  return p;
}

}  // namespace

QuadResult integrate_interval(const Integrand& f, double a, double b, double rel_tol,
                              double abs_floor, int max_panels) {
  std::vector<Panel> panels;
  panels.reserve(64);
  panels.push_back(gk15(f, a, b));
  double err_sum = panels[0].err;
  double val_sum = panels[0].value;
  double abs_sum = std::abs(panels[0].value);
  while (static_cast<int>(panels.size()) < max_panels) {
    // roundoff floor: no point refining below the summation noise
    const double floor = std::max({rel_tol * std::abs(val_sum), abs_floor,
                                   8.0 * 2.22e-16 * abs_sum});
    if (err_sum <= floor) break;
    // split the worst panel (ties broken by left endpoint for determinism)
    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i) {
      if (panels[i].err > panels[worst].err ||
          (panels[i].err == panels[worst].err && panels[i].a < panels[worst].a))
        worst = i;
    }
    Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (mid <= p.a || mid >= p.b) break;  // cannot refine further in doubles
    Panel l = gk15(f, p.a, mid), r = gk15(f, mid, p.b);
    err_sum += l.err + r.err - p.err;
    val_sum += l.value + r.value - p.value;
    abs_sum += std::abs(l.value) + std::abs(r.value) - std::abs(p.value);
    panels[worst] = l;
    panels.push_back(r);
  }
  // deterministic final sum in left-endpoint order
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadResult r;
  r.value = 0.0;
  r.error = 0.0;
  abs_sum = 0.0;
  for (const auto& p : panels) {
    r.value += p.value;
    r.error += p.err;
    abs_sum += std::abs(p.value);
  }
  r.panels = static_cast<int>(panels.size());
  r.converged = r.error <= std::max({rel_tol * std::abs(r.value), std::max(abs_floor, 1e-300),
                                     8.0 * 2.22e-16 * abs_sum});
  return r;
}

QuadResult integrate_halfline_result(const Integrand& f_of_R, double rel_tol) {
  if (!(rel_tol >= 1e-14 && rel_tol <= 1e-4))
    throw Error(ErrorKind::input, "integrate_halfline: tol must be in [1e-14, 1e-4]");
  auto g = [&](double x) {
    const double om = 1.0 - x;
    const double R = x / om;
    const double v = f_of_R(R);
    return v / (om * om);
  };
  // Seed panels split at x = 1/2 (R = 1) so the two regimes refine independently.
  QuadResult lo = integrate_interval(g, 0.0, 0.5, rel_tol * 0.5, 0.0, 6000);
  QuadResult hi = integrate_interval(g, 0.5, 1.0, rel_tol * 0.5, 0.0, 6000);
  QuadResult r;
  r.value = lo.value + hi.value;
  r.error = lo.error + hi.error;
  r.panels = lo.panels + hi.panels;
  r.converged = r.error <= std::max(rel_tol * std::abs(r.value), 1e-300) || (lo.converged && hi.converged);
  if (!r.converged)
    throw QuadratureFailure("integrate_halfline: no convergence after max refinement", r.value,
                            r.error);
  return r;
}

double integrate_halfline(const Integrand& f_of_R, double rel_tol) {
  return integrate_halfline_result(f_of_R, rel_tol).value;
}

double apply_scaling_field(const std::function<double(double, double)>& f, double t, double r,
                           double h) {
  if (!(h > 0.0 && h <= 0.1)) throw Error(ErrorKind::input, "apply_scaling_field: h in (0, 0.1]");
  const double ht = h * std::abs(t);
  const double hr = h * std::abs(r);
  double ft = 0.0, fr = 0.0;
  if (ht > 0.0) {
    const double fp = f(t + ht, r), fm = f(t - ht, r);
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw Error(ErrorKind::domain, "apply_scaling_field: stencil left domain of f (t-axis)");
    ft = (fp - fm) / (2.0 * ht);
  }
  if (hr > 0.0) {
    const double fp = f(t, r + hr), fm = f(t, r - hr);
    if (!std::isfinite(fp) || !std::isfinite(fm))
      throw Error(ErrorKind::domain, "apply_scaling_field: stencil left domain of f (r-axis)");
    fr = (fp - fm) / (2.0 * hr);
  }
  return t * ft + r * fr;
}

}  // namespace wmlab
