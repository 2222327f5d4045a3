#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace anglat {

// Evaluation requested exactly at (or too close to) a pole of the function.
class pole_error : public std::domain_error {
public:
    pole_error(const std::string& what, std::complex<double> where)
        : std::domain_error(what), location(where) {}
    std::complex<double> location;
};

// An iterative scheme failed to reach its target tolerance. Carries the
// error estimate actually achieved so callers can decide what to do.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_rel_err(achieved) {}
    double achieved_rel_err;
};

// A SumSpec that the Appendix-A reduction table cannot express.
class unsupported_sum_error : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class insufficient_data_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace anglat
