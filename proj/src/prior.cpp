#include "amplab/prior.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace amplab {

void DiscretePrior::validate() const {
  if (atoms.size() != weights.size() || atoms.empty()) {
    throw std::invalid_argument("prior: atoms/weights size mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(atoms[i])) throw std::invalid_argument("prior: non-finite atom");
    if (!(weights[i] > 0.0 && weights[i] <= 1.0)) {
      throw std::invalid_argument("prior: weight outside (0,1]");
    }
    if (sign_constrained && atoms[i] < 0.0) {
      throw std::invalid_argument("prior: negative atom in sign-constrained measure");
    }
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      if (atoms[i] == atoms[j]) throw std::invalid_argument("prior: duplicate atom");
    }
    total += weights[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("prior: weights do not sum to 1");
  }
}

double DiscretePrior::second_moment() const {
  double m2 = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) m2 += weights[i] * atoms[i] * atoms[i];
  return m2;
}

double DiscretePrior::mass_at_zero() const {
  double w0 = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i] == 0.0) w0 += weights[i];
  }
  return w0;
}

DiscretePrior DiscretePrior::scaled(double a) const {
  if (!(a > 0.0)) throw std::invalid_argument("prior: scale must be positive");
  DiscretePrior out = *this;
  for (double& x : out.atoms) x *= a;
  return out;
}

DiscretePrior DiscretePrior::point_mass_at_zero(bool sign_constrained) {
  return DiscretePrior{{0.0}, {1.0}, sign_constrained};
}

DiscretePrior DiscretePrior::three_point(double epsilon, double mu, bool sign_constrained) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("three_point: epsilon outside (0,1)");
  }
  if (!(mu > 0.0)) throw std::invalid_argument("three_point: mu must be positive");
  if (sign_constrained) {
    return DiscretePrior{{0.0, mu}, {1.0 - epsilon, epsilon}, true};
  }
  return DiscretePrior{{0.0, mu, -mu}, {1.0 - epsilon, epsilon / 2.0, epsilon / 2.0}, false};
}

DiscretePrior DiscretePrior::mixture(const DiscretePrior& a, const DiscretePrior& b, double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("mixture: weight outside [0,1]");
  if (w == 0.0) return a;
  if (w == 1.0) return b;
  std::map<double, double> merged;
  for (std::size_t i = 0; i < a.atoms.size(); ++i) merged[a.atoms[i]] += (1.0 - w) * a.weights[i];
  for (std::size_t i = 0; i < b.atoms.size(); ++i) merged[b.atoms[i]] += w * b.weights[i];
  DiscretePrior out;
  out.sign_constrained = a.sign_constrained && b.sign_constrained;
  for (const auto& [atom, weight] : merged) {
    out.atoms.push_back(atom);
    out.weights.push_back(weight);
  }
  return out;
}

}  // namespace amplab
