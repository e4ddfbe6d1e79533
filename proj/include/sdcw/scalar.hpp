#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sdcw {

using Rational = boost::multiprecision::cpp_rational;

// Error with a stable machine-readable kind, e.g. "non_associative".
struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& msg)
        : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

// Coefficient field: F_p for p in {2,3,5,7}, or Q (p == 0).
struct Field {
    int p = 0;

    Field() = default;
    explicit Field(int prime) : p(prime) {
        if (p != 0 && p != 2 && p != 3 && p != 5 && p != 7)
            throw Error("bad_field", "supported fields: Q (p=0) and F_p for p in {2,3,5,7}");
    }
    bool is_finite() const { return p > 0; }
    bool operator==(const Field& o) const { return p == o.p; }
    bool operator!=(const Field& o) const { return p != o.p; }
    std::string name() const { return p == 0 ? std::string("Q") : "F" + std::to_string(p); }
};

// Exact field element. Mixing characteristics is rejected.
class Scalar {
  public:
    Scalar() : p_(0), v_(0) {}
    Scalar(Field k, long long n) : p_(k.p) {
        if (p_ > 0) {
            v_ = n % p_;
            if (v_ < 0) v_ += p_;
        } else {
            v_ = 0;
            q_ = n;
        }
    }
    static Scalar zero(Field k) { return Scalar(k, 0); }
    static Scalar one(Field k) { return Scalar(k, 1); }
    // num/den, rejecting denominators divisible by p.
    static Scalar frac(Field k, long long num, long long den) {
        if (den == 0) throw Error("division_by_zero", "fraction with zero denominator");
        if (k.p > 0) {
            Scalar d(k, den);
            if (d.is_zero())
                throw Error("characteristic_clash",
                            "denominator " + std::to_string(den) + " vanishes in F" + std::to_string(k.p));
            return Scalar(k, num) * d.inv();
        }
        Scalar s;
        s.p_ = 0;
        s.q_ = Rational(num, den);
        return s;
    }

    Field field() const { return Field(p_); }
    bool is_zero() const { return p_ > 0 ? v_ == 0 : q_.is_zero(); }
    bool is_one() const { return p_ > 0 ? v_ == 1 : q_ == 1; }

    Scalar operator+(const Scalar& o) const {
        check(o);
        Scalar r(*this);
        if (p_ > 0) {
            r.v_ = (v_ + o.v_) % p_;
        } else
            r.q_ = q_ + o.q_;
        return r;
    }
    Scalar operator-(const Scalar& o) const {
        check(o);
        Scalar r(*this);
        if (p_ > 0) {
            r.v_ = (v_ - o.v_ + p_) % p_;
        } else
            r.q_ = q_ - o.q_;
        return r;
    }
    Scalar operator*(const Scalar& o) const {
        check(o);
        Scalar r(*this);
        if (p_ > 0) {
            r.v_ = (v_ * o.v_) % p_;
        } else
            r.q_ = q_ * o.q_;
        return r;
    }
    Scalar operator-() const {
        Scalar r(*this);
        if (p_ > 0)
            r.v_ = (p_ - v_) % p_;
        else
            r.q_ = -q_;
        return r;
    }
    Scalar inv() const {
        if (is_zero()) throw Error("division_by_zero", "inverse of zero");
        Scalar r(*this);
        if (p_ > 0) {
            // p <= 7: scan
            for (long long c = 1; c < p_; ++c)
                if ((c * v_) % p_ == 1) {
                    r.v_ = c;
                    return r;
                }
            throw Error("division_by_zero", "no inverse found");
        }
        r.q_ = 1 / q_;
        return r;
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inv(); }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const {
        check(o);
        return p_ > 0 ? v_ == o.v_ : q_ == o.q_;
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
    // total order, for canonical sorting of enumeration output
    bool operator<(const Scalar& o) const {
        check(o);
        return p_ > 0 ? v_ < o.v_ : q_ < o.q_;
    }

    // value as integer in [0,p) (finite fields only)
    long long fp_value() const {
        if (p_ == 0) throw Error("bad_field", "fp_value over Q");
        return v_;
    }
    const Rational& rational() const {
        if (p_ != 0) throw Error("bad_field", "rational() over F_p");
        return q_;
    }
    std::string str() const {
        if (p_ > 0) return std::to_string(v_);
        return q_.str();
    }

  private:
    void check(const Scalar& o) const {
        if (p_ != o.p_)
            throw Error("mixed_characteristic", "scalars from F" + std::to_string(p_) + " and F" + std::to_string(o.p_));
    }
    int p_;
    long long v_;
    Rational q_;
};

// Deterministic PRNG for pinned-seed suites.
struct SplitMix64 {
    std::uint64_t s;
    explicit SplitMix64(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    Scalar scalar(Field k) {
        if (k.is_finite()) return Scalar(k, (long long)below((std::uint64_t)k.p));
        long long num = (long long)below(7) - 3;
        return Scalar(k, num);
    }
    Scalar nonzero_scalar(Field k) {
        for (;;) {
            Scalar s = scalar(k);
            if (!s.is_zero()) return s;
        }
    }
};

} // namespace sdcw
