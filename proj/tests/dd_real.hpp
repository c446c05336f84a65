#pragma once

// Minimal double-double arithmetic for the test oracles. The Maclaurin series
// of Ai and J0 suffer catastrophic cancellation in plain doubles once the
// argument grows (terms reach ~1e7 while the result is O(1)), so the oracle
// carries ~31 significant digits and stays trustworthy to far below the 1e-10
// comparison tolerances.

#include <cmath>

namespace ddtest {

struct dd {
    double hi = 0.0, lo = 0.0;
    dd() = default;
    dd(double h) : hi(h), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline dd quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    const double err = std::fma(a, b, -p);
    return {p, err};
}

inline dd add(const dd& a, const dd& b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd sub(const dd& a, const dd& b) { return add(a, {-b.hi, -b.lo}); }

inline dd mul(const dd& a, const dd& b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd div(const dd& a, const dd& b) {
    const double q1 = a.hi / b.hi;
    dd r = sub(a, mul(dd(q1), b));
    const double q2 = r.hi / b.hi;
    r = sub(r, mul(dd(q2), b));
    const double q3 = r.hi / b.hi;
    return add(add(dd(q1), dd(q2)), dd(q3));
}

inline dd mul_pow_int(dd a, int n) {
    dd r(1.0);
    for (int i = 0; i < n; ++i) r = mul(r, a);
    return r;
}

}  // namespace ddtest
