#include "mimo/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mimo/errors.hpp"
#include "mimo/linalg.hpp"

namespace mimo {

SdScheme parse_scheme(std::string_view text) {
  if (text == "proposed") return SdScheme::proposed;
  if (text == "se") return SdScheme::se_sd;
  if (text == "fp") return SdScheme::fp_sd;
  if (text == "ml") return SdScheme::brute_force;
  throw ConfigError("unknown sphere decoder scheme '" + std::string(text) +
                    "' (expected proposed|se|fp|ml)");
}

std::string_view to_string(SdScheme s) noexcept {
  switch (s) {
    case SdScheme::proposed: return "proposed";
    case SdScheme::se_sd: return "se";
    case SdScheme::fp_sd: return "fp";
    case SdScheme::brute_force: return "ml";
  }
  return "?";
}

SdConfig SdConfig::for_scheme(SdScheme scheme, InverseProvider inverse) {
  SdConfig cfg;
  cfg.scheme = scheme;
  cfg.inverse = inverse;
  switch (scheme) {
    case SdScheme::proposed: cfg.radius.kind = RadiusMode::Kind::babai_approx; break;
    case SdScheme::se_sd: cfg.radius.kind = RadiusMode::Kind::infinite; break;
    case SdScheme::fp_sd: cfg.radius.kind = RadiusMode::Kind::babai_exact; break;
    case SdScheme::brute_force: cfg.radius.kind = RadiusMode::Kind::infinite; break;
  }
  return cfg;
}

void SdConfig::validate() const {
  using K = RadiusMode::Kind;
  const bool ok = [&] {
    switch (scheme) {
      case SdScheme::proposed: return radius.kind == K::babai_approx;
      case SdScheme::se_sd: return radius.kind == K::infinite;
      case SdScheme::fp_sd: return radius.kind == K::babai_exact || radius.kind == K::fixed;
      case SdScheme::brute_force: return true;
    }
    return false;
  }();
  if (!ok) {
    throw ConfigError("radius mode does not match sphere decoder scheme '" +
                      std::string(to_string(scheme)) + "'");
  }
  if (radius.kind == K::fixed && !(radius.fixed_sq >= 0.0)) {
    throw ConfigError("fixed radius must be >= 0");
  }
}

double lattice_cost_sq(std::span<const cplx> z, const ComplexMatrix& r, std::span<const cplx> x) {
  return squared_norm(subtract(z, multiply(r, x)));
}

double babai_radius_sq(const ComplexMatrix& r, std::span<const cplx> x_q, std::span<const cplx> x_u) {
  if (!r.is_square() || x_q.size() != r.cols() || x_u.size() != r.cols()) {
    throw ShapeError("babai_radius_sq: R must be KxK and both vectors length K");
  }
  return squared_norm(multiply(r, subtract(x_q, x_u)));
}

namespace {

void require_search_inputs(std::span<const cplx> z, const ComplexMatrix& r) {
  if (!r.is_square() || r.rows() == 0 || z.size() != r.rows()) {
    throw ShapeError("sphere search: R must be KxK with K = |z| >= 1");
  }
}

// Depth-first tree search over layers K-1 .. 0 of an upper-triangular system.
class TreeSearch {
 public:
  TreeSearch(std::span<const cplx> z, const ComplexMatrix& r, const Constellation& c,
             double bound, bool tighten, bool inclusive)
      : z_(z), r_(r), c_(c), k_(r.rows()), m_(static_cast<std::size_t>(c.order())),
        bound_(bound), tighten_(tighten), inclusive_(inclusive),
        path_(k_), partial_((k_ + 1) * k_), best_(k_), scaled_(k_ * m_), costs_(k_ * m_), order_(k_ * m_) {
    stats_.radius_initial_sq = bound;
    std::copy(z.begin(), z.end(), partial_.begin() + static_cast<std::ptrdiff_t>(k_ * k_));
    for (std::size_t i = 0; i < k_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) scaled_[i * m_ + j] = r_(i, i) * c_.point(j);
    }
  }

  SdResult run() {
    descend(k_ - 1, 0.0);
    SdResult out;
    stats_.radius_final_sq = tighten_ ? bound_ : (stats_.found ? best_cost_ : bound_);
    if (stats_.found) {
      out.x_hat.resize(k_);
      for (std::size_t i = 0; i < k_; ++i) out.x_hat[i] = c_.point(best_[i]);
    }
    out.stats = stats_;
    return out;
  }

 private:
  bool admissible(double total) const {
    return inclusive_ ? total <= bound_ : total < bound_;
  }

  void descend(std::size_t layer, double acc) {
    // Interference-cancelled observation for this layer, maintained by visit().
    const cplx centre = partial_[(layer + 1) * k_ + layer];
    const cplx* scaled = scaled_.data() + layer * m_;

    double* costs = costs_.data() + layer * m_;
    std::size_t* order = order_.data() + layer * m_;
    for (std::size_t j = 0; j < m_; ++j) costs[j] = abs2(centre - scaled[j]);
    stats_.nodes_visited += m_;

    if (!tighten_) {
      // Fixed radius: every admissible child is expanded, so order does not matter.
      for (std::size_t j = 0; j < m_; ++j) {
        const double total = acc + costs[j];
        if (admissible(total)) visit(layer, j, total);
      }
      return;
    }

    // Ascending metric, ties by alphabet index (stable insertion sort).
    for (std::size_t j = 0; j < m_; ++j) {
      std::size_t pos = j;
      while (pos > 0 && costs[order[pos - 1]] > costs[j]) {
        order[pos] = order[pos - 1];
        --pos;
      }
      order[pos] = j;
    }
    for (std::size_t u = 0; u < m_; ++u) {
      const std::size_t j = order[u];
      const double total = acc + costs[j];
      if (!admissible(total)) break;
      visit(layer, j, total);
    }
  }

  void visit(std::size_t layer, std::size_t j, double total) {
    path_[layer] = j;
    const cplx x = c_.point(j);
    // partial_[l*K + i] = z_i - sum_{m >= l} r_{i,m} x_m, valid for i < l.
    const cplx* above = partial_.data() + (layer + 1) * k_;
    cplx* here = partial_.data() + layer * k_;
    for (std::size_t i = 0; i < layer; ++i) here[i] = above[i] - r_(i, layer) * x;
    if (layer == 0) {
      leaf(total);
    } else {
      descend(layer - 1, total);
    }
  }

  void leaf(double total) {
    if (tighten_) {
      if (total < bound_) {
        bound_ = total;
        best_ = path_;
        best_cost_ = total;
        stats_.found = true;
        ++stats_.leaf_updates;
      }
    } else if (!stats_.found || total < best_cost_) {
      best_ = path_;
      best_cost_ = total;
      stats_.found = true;
    }
  }

  std::span<const cplx> z_;
  const ComplexMatrix& r_;
  const Constellation& c_;
  std::size_t k_;
  std::size_t m_;
  double bound_;
  bool tighten_;
  bool inclusive_;
  double best_cost_ = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> path_;
  CVector partial_;
  std::vector<std::size_t> best_;
  CVector scaled_;  // r_ii * point_j
  std::vector<double> costs_;
  std::vector<std::size_t> order_;
  SearchStats stats_;
};

}  // namespace

SdResult sd_proposed(std::span<const cplx> z, const ComplexMatrix& r, const Constellation& c,
                     double cost0_sq, std::span<const cplx> fallback) {
  require_search_inputs(z, r);
  if (fallback.size() != z.size()) throw ShapeError("sd_proposed: fallback length differs from K");
  SdResult res = TreeSearch(z, r, c, cost0_sq, /*tighten=*/true, /*inclusive=*/false).run();
  if (!res.stats.found) {
    res.x_hat.assign(fallback.begin(), fallback.end());
    res.stats.used_fallback = true;
  }
  return res;
}

SdResult sd_se(std::span<const cplx> z, const ComplexMatrix& r, const Constellation& c) {
  require_search_inputs(z, r);
  return TreeSearch(z, r, c, std::numeric_limits<double>::infinity(), true, false).run();
}

SdResult sd_fp(std::span<const cplx> z, const ComplexMatrix& r, const Constellation& c, double r_sq) {
  require_search_inputs(z, r);
  if (!(r_sq >= 0.0)) throw ConfigError("sd_fp: radius must be >= 0");
  const double bound = r_sq * (1.0 + kFixedRadiusSlack);
  SdResult res = TreeSearch(z, r, c, bound, /*tighten=*/false, /*inclusive=*/true).run();
  res.stats.radius_initial_sq = bound;
  if (!res.stats.found) res.stats.radius_final_sq = bound;
  return res;
}

MlResult brute_force_ml(std::span<const cplx> z, const ComplexMatrix& r, const Constellation& c) {
  require_search_inputs(z, r);
  const std::size_t k = r.rows();
  const auto m = static_cast<std::size_t>(c.order());
  double space = std::pow(static_cast<double>(m), static_cast<double>(k));
  if (space > 1e6) {
    throw ConfigError("brute_force_ml: search space M^K = " + std::to_string(space) +
                      " exceeds 1e6");
  }
  std::vector<std::size_t> idx(k, 0);
  CVector x(k, c.point(0));
  MlResult best{{}, std::numeric_limits<double>::infinity()};
  while (true) {
    const double cost = lattice_cost_sq(z, r, x);
    if (cost < best.cost_sq) {
      best.cost_sq = cost;
      best.x_hat = x;
    }
    // Odometer increment, last user least significant.
    std::size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < m) {
        x[pos] = c.point(idx[pos]);
        break;
      }
      idx[pos] = 0;
      x[pos] = c.point(0);
      if (pos == 0) return best;
    }
  }
}

SdDecode sphere_decode(const ComplexMatrix& h, std::span<const cplx> y, const Constellation& c,
                       const SdConfig& cfg) {
  cfg.validate();
  if (y.size() != h.rows()) throw ShapeError("sphere_decode: |y| differs from rows of H");
  const QrResult qr = qr_decompose(h);
  const CVector z = adjoint_multiply(qr.q, y);

  SdDecode out;
  // Babai radius from the configured inverse: x_u = inverse(C) g, x_q = quantize(x_u).
  auto babai = [&](const InverseProvider& inv, CVector* x_q) {
    const ComplexMatrix gm = gram(h, &out.flops);
    const CVector g = adjoint_multiply(h, y, &out.flops);
    const CVector x_u = multiply(apply_inverse_provider(gm, inv, &out.flops), g, &out.flops);
    *x_q = quantize(x_u, c);
    const double r_sq = babai_radius_sq(qr.r, *x_q, x_u);
    out.flops += static_cast<FlopCount>(qr.r.rows() * (qr.r.rows() + 1) / 2);
    return r_sq;
  };

  using K = RadiusMode::Kind;
  switch (cfg.scheme) {
    case SdScheme::proposed: {
      CVector x_q;
      const double r_sq = babai(cfg.inverse, &x_q);
      SdResult res = sd_proposed(z, qr.r, c, r_sq, x_q);
      out.x_hat = std::move(res.x_hat);
      out.stats = res.stats;
      break;
    }
    case SdScheme::se_sd: {
      SdResult res = sd_se(z, qr.r, c);
      out.x_hat = std::move(res.x_hat);
      out.stats = res.stats;
      break;
    }
    case SdScheme::fp_sd: {
      double r_sq = cfg.radius.fixed_sq;
      CVector x_q;
      if (cfg.radius.kind == K::babai_exact) r_sq = babai(InverseProvider::exact(), &x_q);
      SdResult res = sd_fp(z, qr.r, c, r_sq);
      // An empty fixed sphere leaves nothing to return; fall back to the Babai point.
      if (!res.stats.found && !x_q.empty()) {
        res.x_hat = std::move(x_q);
        res.stats.used_fallback = true;
      } else if (!res.stats.found) {
        res.x_hat.assign(z.size(), c.point(0));
        res.stats.used_fallback = true;
      }
      out.x_hat = std::move(res.x_hat);
      out.stats = res.stats;
      break;
    }
    case SdScheme::brute_force: {
      MlResult ml = brute_force_ml(z, qr.r, c);
      out.x_hat = std::move(ml.x_hat);
      out.stats.found = true;
      out.stats.radius_final_sq = ml.cost_sq;
      break;
    }
  }
  return out;
}

}  // namespace mimo
