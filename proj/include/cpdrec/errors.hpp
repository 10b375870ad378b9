#pragma once

#include <stdexcept>
#include <string>

namespace cpdrec {

// Requested kernel derivative outside its validity range (even-integer order,
// or the order s too small for the derivative to exist at coincident points).
class kernel_derivative_error : public std::domain_error {
public:
    explicit kernel_derivative_error(const std::string& what) : std::domain_error(what) {}
};

// Attached polynomial order too low for the kernel to be conditionally
// positive definite with respect to it.
class cpd_order_error : public std::invalid_argument {
public:
    explicit cpd_order_error(const std::string& what) : std::invalid_argument(what) {}
};

// The polynomial block of a saddle system is unsatisfiable: the right-hand
// side is not in the range of B^T, i.e. the functional is not polynomially
// consistent on the node set.
class consistency_error : public std::runtime_error {
public:
    explicit consistency_error(const std::string& what) : std::runtime_error(what) {}
};

// The kernel block fails to be definite on the null space of the polynomial
// block, so the saddle system is singular.
class definiteness_error : public std::runtime_error {
public:
    explicit definiteness_error(const std::string& what) : std::runtime_error(what) {}
};

// A solve produced a residual larger than its internal tolerance admits.
class solve_error : public std::runtime_error {
public:
    explicit solve_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cpdrec
