#ifndef LIKEPOWERS_SELECTION_HPP
#define LIKEPOWERS_SELECTION_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <likepowers/numerics.hpp>

namespace likepowers
{

template <typename Real>
struct SelectionTerm {
    std::uint64_t index = 0;
    int sign = 1;
    Real value{0};
};

// A finite signed sum sum_k sign_k * value_k with its target.
// residual = target - achieved.
template <typename Real>
struct Selection {
    std::string sequence;
    std::vector<SelectionTerm<Real>> terms;
    Real achieved{0};
    Real target{0};
    Real residual{0};

    void push(std::uint64_t index, int sign, Real value)
    {
        if (sign > 0) {
            achieved += value;
        } else {
            achieved -= value;
        }
        terms.push_back({index, sign, std::move(value)});
    }

    void flip_signs()
    {
        for (auto &t : terms) {
            t.sign = -t.sign;
        }
        achieved = -achieved;
    }

    void finish() { residual = target - achieved; }
};

// Term budget ran out before the residual bound was met. The partial
// selection built so far is attached.
template <typename Real>
class convergence_failure : public std::runtime_error
{
public:
    convergence_failure(const std::string &what, Selection<Real> partial)
        : std::runtime_error(what), partial_(std::move(partial))
    {
    }

    const Selection<Real> &partial() const { return partial_; }

private:
    Selection<Real> partial_;
};

} // namespace likepowers

#endif
