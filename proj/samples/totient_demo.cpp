// Squarefree n whose totient ratio phi(n)/n lands near a few targets,
// then a signed harmonic-like expansion of 1/2.

#include <iostream>

#include <likepowers.hpp>

namespace lp = likepowers;

int main()
{
    lp::ScopedPrecision prec(128);
    for (const double t : {0.5, 1.0 / 3, 0.3, 0.2718281828}) {
        const auto res = lp::totient_approx(t, 1e-6);
        std::cout << "t = " << t << "  primes:";
        for (const auto p : res.primes) {
            std::cout << ' ' << p;
        }
        std::cout << "\n  phi(n)/n = " << lp::to_decimal(lp::to_hp(res.ratio), 15) << '\n';
    }

    const auto sel = lp::signed_approx<lp::HpReal>({lp::Harmonic{}}, 1.0, lp::HpReal(0.5), lp::HpReal(1e-3));
    std::cout << "1/2 from 1 + 1/(n+1): " << sel.terms.size() << " terms, residual "
              << lp::to_decimal(sel.residual, 4) << '\n';
}
