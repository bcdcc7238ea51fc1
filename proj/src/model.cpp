#include "alignlab/model.hpp"

#include "alignlab/error.hpp"

namespace alignlab {

void ModelParams::validate() const {
  const Eigen::Index kk = v1.cols();
  if (kk < 1) throw Error(ErrorKind::DimensionMismatch, "latent dimension must be at least 1");
  if (v2.cols() != kk || w1.rows() != kk || w2.rows() != kk || q1.rows() != kk || q1.cols() != kk)
    throw Error(ErrorKind::DimensionMismatch, "parameter shapes disagree on K");
  if (!v1.allFinite() || !v2.allFinite() || !w1.allFinite() || !w2.allFinite() || !q1.allFinite())
    throw Error(ErrorKind::InvalidInput, "parameters have non-finite entries");
}

}  // namespace alignlab
