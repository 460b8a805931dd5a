#pragma once

#include <cmath>
#include <stdexcept>

namespace fusionwalk {

/// Deformation parameter q in (0,1) with the derived loop value
/// delta = q + 1/q > 2, the quantum dimension of the generating object.
class QParam {
public:
    explicit QParam(double q) : q_(q) {
        if (!(q > 0.0) || !(q < 1.0))
            throw std::invalid_argument("QParam: q must lie in the open interval (0,1)");
    }

    double q() const noexcept { return q_; }
    double delta() const noexcept { return q_ + 1.0 / q_; }

    bool operator==(const QParam&) const = default;

private:
    double q_;
};

/// Quantum integer [n]_q = (q^n - q^-n)/(q - q^-1); [0] = 0, [1] = 1.
/// Evaluated as q^(1-n) (1 - q^(2n)) / (1 - q^2), a positive, stable form for q < 1.
inline double qint(int n, QParam q) {
    if (n < 0) throw std::invalid_argument("qint: n must be nonnegative");
    if (n == 0) return 0.0;
    const double qq = q.q();
    return std::pow(qq, 1 - n) * (1.0 - std::pow(qq, 2 * n)) / (1.0 - qq * qq);
}

}  // namespace fusionwalk
