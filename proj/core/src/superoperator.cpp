#include "hlp/superoperator.hpp"

#include <mutex>

#include "hlp/error.hpp"
#include "hlp/random.hpp"

namespace hlp {

struct SuperOperator::Cache {
  std::once_flag once;
  Matrix matrix;
};

SuperOperator::SuperOperator(BlockProfile domain, Exponent p, BlockProfile codomain, Exponent q, Action action)
    : domain_(std::move(domain)),
      p_(p),
      codomain_(std::move(codomain)),
      q_(q),
      action_(std::move(action)),
      cache_(std::make_shared<Cache>()) {}

SuperOperator SuperOperator::from_matrix(BlockProfile domain, Exponent p, BlockProfile codomain, Exponent q, Matrix m) {
  if (m.rows() != codomain.carrier_dim() || m.cols() != domain.carrier_dim()) {
    throw Error(ErrorCode::ProfileMismatch, "superoperator matrix has the wrong shape");
  }
  auto shared = std::make_shared<const Matrix>(std::move(m));
  const BlockProfile cod = codomain;
  SuperOperator op(std::move(domain), p, std::move(codomain), q, [shared, cod](const BlockMatrix& x) {
    return BlockMatrix::from_vector(cod, *shared * x.to_vector());
  });
  std::call_once(op.cache_->once, [&] { op.cache_->matrix = *shared; });
  return op;
}

BlockMatrix SuperOperator::apply(const BlockMatrix& x) const {
  require_same_profile(domain_, x.profile(), "SuperOperator::apply");
  BlockMatrix y = action_(x);
  require_same_profile(codomain_, y.profile(), "SuperOperator result");
  return y;
}

const Matrix& SuperOperator::matrix() const {
  std::call_once(cache_->once, [this] {
    const std::vector<BlockMatrix> basis = BlockMatrix::unit_basis(domain_);
    Matrix m(codomain_.carrier_dim(), domain_.carrier_dim());
    for (std::size_t k = 0; k < basis.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = apply(basis[k]).to_vector();
    cache_->matrix = std::move(m);
  });
  return cache_->matrix;
}

SuperOperator SuperOperator::hs_adjoint() const {
  return from_matrix(codomain_, q_.conjugate(), domain_, p_.conjugate(), matrix().adjoint());
}

Matrix transpose_permutation(const BlockProfile& profile) {
  const int n = profile.carrier_dim();
  Matrix perm = Matrix::Zero(n, n);
  int offset = 0;
  for (int d : profile.dims()) {
    for (int c = 0; c < d; ++c) {
      for (int r = 0; r < d; ++r) perm(offset + r * d + c, offset + c * d + r) = 1.0;
    }
    offset += d * d;
  }
  return perm;
}

SuperOperator SuperOperator::dual() const {
  // tr(g T(x)) = vec(g^T) . M vec(x)  =>  vec(dual(g)^T) = M^T vec(g^T)
  const Matrix pd = transpose_permutation(domain_);
  const Matrix pc = transpose_permutation(codomain_);
  return from_matrix(codomain_, q_.conjugate(), domain_, p_.conjugate(), pd * matrix().transpose() * pc);
}

double SuperOperator::linearity_residual(int probes, std::uint64_t seed) const {
  Rng rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  double worst = 0.0;
  const Matrix& m = matrix();
  for (int k = 0; k < probes; ++k) {
    const BlockMatrix x = random_element(rng, domain_);
    const BlockMatrix y = random_element(rng, domain_);
    const Complex a(coef(rng), coef(rng));
    const Complex b(coef(rng), coef(rng));
    const BlockMatrix tx = apply(x);
    const double scale = std::max(1.0, tx.max_abs());
    worst = std::max(worst, (apply(a * x + b * y) - a * tx - b * apply(y)).max_abs() / scale);
    worst = std::max(worst, (BlockMatrix::from_vector(codomain_, m * x.to_vector()) - tx).max_abs() / scale);
  }
  return worst;
}

SuperOperator compose(const SuperOperator& second, const SuperOperator& first) {
  require_same_profile(first.codomain(), second.domain(), "compose");
  return SuperOperator(first.domain(), first.p(), second.codomain(), second.q(),
                       [second, first](const BlockMatrix& x) { return second.apply(first.apply(x)); });
}

}  // namespace hlp
