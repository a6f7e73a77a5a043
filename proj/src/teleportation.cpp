#include <cmath>
#include <numbers>

#include "memchan/channels.hpp"

namespace memchan {

namespace {

struct WeylOperator {
  ComplexMatrix matrix;
  std::string label;
};

std::string site_label(int d, int shift, int phase) {
  if (d == 2) {
    static const char* names[2][2] = {{"I", "Z"}, {"X", "XZ"}};
    return names[shift][phase];
  }
  return "X^" + std::to_string(shift) + "Z^" + std::to_string(phase);
}

// Outcome o carries one base-d^2 digit (shift * d + phase) per site; site 0 is most significant.
WeylOperator weyl_operator(int d, int uses, Index outcome) {
  const Index per_site = static_cast<Index>(d) * d;
  std::vector<Index> digits(static_cast<std::size_t>(uses));
  for (int s = uses - 1; s >= 0; --s) {
    digits[static_cast<std::size_t>(s)] = outcome % per_site;
    outcome /= per_site;
  }
  WeylOperator out{ComplexMatrix::Identity(1, 1), ""};
  for (int s = 0; s < uses; ++s) {
    const int shift = static_cast<int>(digits[static_cast<std::size_t>(s)] / d);
    const int phase = static_cast<int>(digits[static_cast<std::size_t>(s)] % d);
    ComplexMatrix w = ComplexMatrix::Zero(d, d);
    for (int r = 0; r < d; ++r) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(phase * r % d) / d;
      w((r + shift) % d, r) = std::polar(1.0, angle);  // X^shift Z^phase |r>
    }
    out.matrix = kron(out.matrix, w);
    out.label += (s == 0 ? "" : " ") + site_label(d, shift, phase);
  }
  return out;
}

// Unnormalized output-half state after projecting (input, reference) onto (I (x) W)|+>.
ComplexMatrix conditional_output(const ChoiState& j, const DensityMatrix& rho, const ComplexMatrix& w) {
  const Index dim = j.system_dim();
  const ComplexMatrix x = w.conjugate() * rho.matrix() * w.transpose() / static_cast<double>(dim);
  const auto& jm = j.state().matrix();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index rp = 0; rp < dim; ++rp) {
      const Complex xr = x(r, rp);
      if (xr == Complex{0.0, 0.0}) continue;
      m += xr * jm.block(r * dim, rp * dim, dim, dim);
    }
  }
  return m;
}

}  // namespace

Index bell_outcomes(const ChoiState& j) { return j.system_dim() * j.system_dim(); }

TeleportationRecord teleport_through_choi(const ChoiState& j, const DensityMatrix& rho, int outcome) {
  if (rho.dim() != j.system_dim()) throw InvalidArgument("teleported state has wrong dimension");
  if (outcome < 0 || outcome >= bell_outcomes(j)) throw InvalidArgument("Bell outcome out of range");
  const WeylOperator w = weyl_operator(j.site_dim(), j.uses(), outcome);
  const ComplexMatrix m = conditional_output(j, rho, w.matrix);
  const double probability = m.trace().real();
  if (!(probability > 1e-14)) throw InvalidArgument("Bell outcome has zero probability");
  // The output half carries W^* rho W^T; W^T undoes it.
  const ComplexMatrix correction = w.matrix.transpose();
  ComplexMatrix out = correction * m * correction.adjoint() / probability;
  out = (0.5 * (out + out.adjoint())).eval();
  return {outcome, w.label, probability, DensityMatrix(std::move(out))};
}

TeleportationRecord teleport_through_choi(const ChoiState& j, const DensityMatrix& rho, std::mt19937_64& rng) {
  const Index outcomes = bell_outcomes(j);
  std::vector<double> probs(static_cast<std::size_t>(outcomes));
  for (Index o = 0; o < outcomes; ++o) {
    const WeylOperator w = weyl_operator(j.site_dim(), j.uses(), o);
    probs[static_cast<std::size_t>(o)] = conditional_output(j, rho, w.matrix).trace().real();
  }
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double cumulative = 0.0;
  int chosen = static_cast<int>(outcomes) - 1;
  for (Index o = 0; o < outcomes; ++o) {
    cumulative += probs[static_cast<std::size_t>(o)];
    if (u < cumulative) {
      chosen = static_cast<int>(o);
      break;
    }
  }
  return teleport_through_choi(j, rho, chosen);
}

TeleportationCheck check_teleportation(const ChoiState& j, const DensityMatrix& rho, double tolerance) {
  const DensityMatrix expected = j.channel_output(rho);
  double worst = 0.0;
  for (Index o = 0; o < bell_outcomes(j); ++o) {
    const auto record = teleport_through_choi(j, rho, static_cast<int>(o));
    worst = std::max(worst, trace_norm_distance(record.output, expected));
  }
  return {worst, worst <= tolerance};
}

}  // namespace memchan
