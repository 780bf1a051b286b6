#include "hesse/hessian.hpp"

#include <stdexcept>

#include "hesse/random.hpp"

namespace hesse {

const char* to_string(HessianMode mode) {
  return mode == HessianMode::symbolic ? "symbolic" : "probabilistic";
}

namespace {

template <class Field>
PolyMatrix<Field> hessian_of(const Polynomial<Field>& f) {
  const std::size_t n = f.nvars();
  PolyMatrix<Field> h(n, n, n, f.field());
  auto grad = gradient(f);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      auto e = partial(grad[i], j);
      if (i != j) h.set(j, i, e);
      h.set(i, j, std::move(e));
    }
  }
  return h;
}

void require_form(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("expected a nonzero polynomial");
  if (!f.is_homogeneous()) throw std::invalid_argument("expected a homogeneous polynomial");
}

}  // namespace

QPolyMatrix hessian_matrix(const Poly& f) {
  QPolyMatrix h = hessian_of(f);
  if (!(h == h.transpose())) throw std::logic_error("Hessian matrix is not symmetric");
  return h;
}

HessianVerdict hessian_vanishes(const Poly& f, HessianMode mode, int trials, std::uint64_t seed,
                                const PrimeField& field, DeterminantAlgorithm algorithm) {
  require_form(f);
  const long n1 = static_cast<long>(f.nvars());
  const long d = f.degree();
  HessianVerdict v;
  v.mode = mode;
  v.degree_bound = n1 * std::max(d - 2, 0L);
  if (mode == HessianMode::symbolic) {
    Poly det = symbolic_determinant(hessian_matrix(f), algorithm);
    v.vanishes = det.is_zero();
    v.error_bound = 0;
    v.determinant = std::move(det);
    return v;
  }
  if (trials < 1) throw std::invalid_argument("probabilistic mode needs trials >= 1");
  v.trials = trials;
  v.modulus = field.modulus();
  PolyMatrix<PrimeField> h = hessian_of(reduce_mod(f, field));
  v.vanishes = true;
  for (int t = 0; t < trials && v.vanishes; ++t) {
    Rng rng = Rng::substream(seed, "hessian.trial", static_cast<std::uint64_t>(t));
    auto point = rng.field_point(field, f.nvars());
    if (determinant(h.evaluate_at(point)) != 0) v.vanishes = false;
  }
  // Only a "vanishes" answer can be wrong; a nonzero evaluation is a proof.
  Rational per_trial(Integer(v.degree_bound), Integer(std::to_string(field.modulus())));
  per_trial.canonicalize();
  Rational bound = 1;
  for (int t = 0; t < trials; ++t) bound *= per_trial;
  v.error_bound = bound;
  return v;
}

std::size_t generic_hessian_rank(const Poly& f, int samples, std::uint64_t seed,
                                 const PrimeField& field) {
  require_form(f);
  if (f.degree() < 2)
    throw std::invalid_argument("polar image dimension is undefined for degree < 2");
  if (samples < 1) throw std::invalid_argument("generic rank needs samples >= 1");
  PolyMatrix<PrimeField> h = hessian_of(reduce_mod(f, field));
  std::size_t best = 0;
  for (int s = 0; s < samples; ++s) {
    Rng rng = Rng::substream(seed, "hessian.rank", static_cast<std::uint64_t>(s));
    auto point = rng.field_point(field, f.nvars());
    best = std::max(best, rank(h.evaluate_at(point)));
    if (best == f.nvars()) break;
  }
  return best;
}

int polar_image_dim(const Poly& f, int samples, std::uint64_t seed, const PrimeField& field) {
  return static_cast<int>(generic_hessian_rank(f, samples, seed, field)) - 1;
}

}  // namespace hesse
