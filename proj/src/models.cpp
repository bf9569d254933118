#include "specloc/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specloc/dense.hpp"

namespace specloc {

Model make_ssh(double v, double w, double disorder, std::uint64_t seed) {
  Model m;
  m.name = "ssh";
  m.dim = 1;
  m.internal_dim = 2;
  m.chiral = true;
  m.translation_invariant = disorder == 0.0;
  m.build = [=](const LatticeBox& box) { return build_ssh(box, v, w, disorder, seed); };
  m.chiral_symbol = [=](double k) {
    Matrix s(1, 1);
    s(0, 0) = v + w * std::exp(Complex(0.0, -k));
    return s;
  };
  m.bloch_symbol = [=](double k, double) {
    const Complex s = v + w * std::exp(Complex(0.0, -k));
    Matrix h(2, 2);
    h << 0.0, std::conj(s), s, 0.0;
    return h;
  };
  return m;
}

Model make_qwz(double mass) {
  Model m;
  m.name = "qwz";
  m.dim = 2;
  m.internal_dim = 2;
  m.chiral = false;
  m.translation_invariant = true;
  m.build = [=](const LatticeBox& box) { return build_qwz(box, mass); };
  m.bloch_symbol = [=](double k1, double k2) {
    const Complex i1(0.0, 1.0);
    Matrix h(2, 2);
    const double d1 = std::sin(k1);
    const double d2 = std::sin(k2);
    const double d3 = mass - std::cos(k1) - std::cos(k2);
    h << d3, d1 - i1 * d2, d1 + i1 * d2, -d3;
    return h;
  };
  return m;
}

double bulk_gap_scan(const Model& model, int nk) {
  if (!model.translation_invariant)
    throw std::invalid_argument("bulk scan needs a translation-invariant model");
  const double step = 2.0 * std::numbers::pi / nk;
  double gap = std::numeric_limits<double>::infinity();
  if (model.dim == 1) {
    for (int i = 0; i < nk; ++i) {
      gap = std::min(gap, smallest_singular_value(model.bloch_symbol(i * step, 0.0)));
    }
  } else {
    const int n2 = std::max(64, nk / 16);
    const double step2 = 2.0 * std::numbers::pi / n2;
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        gap = std::min(gap, smallest_singular_value(model.bloch_symbol(i * step2, j * step2)));
  }
  return gap;
}

double bulk_norm_scan(const Model& model, int nk) {
  if (!model.translation_invariant)
    throw std::invalid_argument("bulk scan needs a translation-invariant model");
  const double step = 2.0 * std::numbers::pi / nk;
  double nrm = 0.0;
  if (model.dim == 1) {
    for (int i = 0; i < nk; ++i) nrm = std::max(nrm, operator_norm(model.bloch_symbol(i * step, 0.0)));
  } else {
    const int n2 = std::max(64, nk / 8);
    const double step2 = 2.0 * std::numbers::pi / n2;
    for (int i = 0; i < n2; ++i)
      for (int j = 0; j < n2; ++j)
        nrm = std::max(nrm, operator_norm(model.bloch_symbol(i * step2, j * step2)));
  }
  return nrm;
}

}  // namespace specloc
