#include "cpdrec/types.hpp"

namespace cpdrec {

NodeSet::NodeSet(Matrix points) : pts_(std::move(points)) {
    if (pts_.rows() < 1 || pts_.cols() < 1)
        throw std::invalid_argument("node set needs at least one point of dimension >= 1");
    if (!pts_.allFinite())
        throw std::invalid_argument("node coordinates must be finite");
    for (Index i = 0; i < pts_.rows(); ++i)
        for (Index j = i + 1; j < pts_.rows(); ++j)
            if ((pts_.row(i).array() == pts_.row(j).array()).all())
                throw std::invalid_argument("node set contains duplicate points");
}

}  // namespace cpdrec
