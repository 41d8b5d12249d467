#pragma once

#include <functional>
#include <map>

namespace tsk {

/**
 * Computes Theta_{-r} from
 *   Theta_{-r} = lambda Theta_{1,r-1},
 *   Theta_{a,b} = lambda^2 Theta_{a+1,b-1} + z (Theta_a Theta_{-b} - Theta_{a-b}),
 *   Theta_{a,0} = lambda^{-1} Theta_a.
 * `scale(c, t)` multiplies t by the ring scalar c; `add(x, y, sign)` returns x + sign*y.
 */
template <class T, class ThetaPos, class Mul, class Add, class Scale>
T theta_negative(int r, const ThetaPos& theta, const T& theta0, Mul mul, Add add, Scale scale) {
    std::map<int, T> neg;
    std::function<T(int)> th;
    std::function<T(int, int)> th2;
    th = [&](int s) -> T {
        if (s > 0) return theta(s);
        if (s == 0) return theta0;
        auto it = neg.find(-s);
        if (it != neg.end()) return it->second;
        T v = scale(RingElem::lambda(1), th2(1, -s - 1));
        neg.emplace(-s, v);
        return v;
    };
    th2 = [&](int a, int b) -> T {
        if (b == 0) return scale(RingElem::lambda(-1), th(a));
        T first = scale(RingElem::lambda(2), th2(a + 1, b - 1));
        T inner = add(mul(th(a), th(-b)), th(a - b), -1);
        return add(first, scale(RingElem::z(1), inner), 1);
    };
    return th(-r);
}

}  // namespace tsk
