#pragma once

#include <Eigen/Dense>

#include "cpdrec/errors.hpp"

namespace cpdrec {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// A finite set of pairwise distinct points in R^d, one point per row.
class NodeSet {
public:
    explicit NodeSet(Matrix points);

    Index size() const { return pts_.rows(); }
    int dim() const { return static_cast<int>(pts_.cols()); }
    const Matrix& points() const { return pts_; }
    Vector point(Index i) const { return pts_.row(i).transpose(); }

private:
    Matrix pts_;
};

}  // namespace cpdrec
