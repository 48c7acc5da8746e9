#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace slmod {

// Exact rational. Values whose reduced numerator and denominator fit in
// int64 are stored inline; anything larger lives in a GMP rational. The
// representation is canonical, so a big value never fits the small form.
class Scalar {
 public:
  Scalar() noexcept = default;
  Scalar(int n) noexcept : num_(n) {}
  Scalar(long n) : Scalar(static_cast<long long>(n)) {}
  Scalar(long long n) {
    if (n == std::numeric_limits<long long>::min())
      *this = Scalar(mpq_class(mpz_class(std::to_string(n))));
    else
      num_ = n;
  }
  Scalar(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("zero denominator");
    *this = from_i128(n, d);
  }
  explicit Scalar(const mpq_class& q) { set_big(q); }

  Scalar(const Scalar& o)
      : num_(o.num_), den_(o.den_), big_(o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr) {}
  Scalar(Scalar&&) noexcept = default;
  Scalar& operator=(const Scalar& o) {
    if (this == &o) return *this;
    num_ = o.num_;
    den_ = o.den_;
    if (o.big_)
      big_ = std::make_unique<mpq_class>(*o.big_);
    else
      big_.reset();
    return *this;
  }
  Scalar& operator=(Scalar&&) noexcept = default;

  // Accepts "p", "-p" or "p/q" with optional surrounding blanks.
  static Scalar parse(std::string_view s) {
    auto trim = [](std::string_view t) {
      while (!t.empty() && (t.front() == ' ' || t.front() == '\t')) t.remove_prefix(1);
      while (!t.empty() && (t.back() == ' ' || t.back() == '\t')) t.remove_suffix(1);
      return t;
    };
    s = trim(s);
    auto integer_ok = [](std::string_view t) {
      if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
      if (t.empty()) return false;
      for (char c : t)
        if (c < '0' || c > '9') return false;
      return true;
    };
    auto slash = s.find('/');
    std::string_view ns = trim(s.substr(0, slash));
    std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : trim(s.substr(slash + 1));
    if (!integer_ok(ns) || !integer_ok(ds)) throw std::invalid_argument("unparseable rational: " + std::string(s));
    auto strip_plus = [](std::string_view t) { return std::string(t.front() == '+' ? t.substr(1) : t); };
    mpz_class n(strip_plus(ns)), d(strip_plus(ds));
    if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(s));
    mpq_class q(n, d);
    q.canonicalize();
    return Scalar(q);
  }

  std::string to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    mpq_class q(i64_to_mpz(num_), i64_to_mpz(den_));
    return q;
  }

  bool is_zero() const noexcept { return !big_ && num_ == 0; }
  bool is_one() const noexcept { return !big_ && num_ == 1 && den_ == 1; }
  bool is_big() const noexcept { return static_cast<bool>(big_); }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  int sign() const {
    if (big_) return sgn(*big_);
    return (num_ > 0) - (num_ < 0);
  }
  double to_double() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }
  // Only valid when the value is an integer that fits in int64.
  std::int64_t to_int64() const {
    if (big_ || den_ != 1) throw std::domain_error("not a small integer: " + to_string());
    return num_;
  }

  Scalar operator-() const {
    if (big_) return Scalar(mpq_class(-*big_));
    Scalar r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == b.den_) {
        __int128 n = static_cast<__int128>(a.num_) + b.num_;
        if (a.den_ == 1 && fits(n)) return small(static_cast<std::int64_t>(n), 1);
        return from_i128(n, a.den_);
      }
      __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
      __int128 d = static_cast<__int128>(a.den_) * b.den_;
      return from_i128(n, d);
    }
    return Scalar(mpq_class(a.to_mpq() + b.to_mpq()));
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) {
      if (a.num_ == 0 || b.num_ == 0) return Scalar();
      if (a.den_ == 1 && b.den_ == 1) {
        __int128 n = static_cast<__int128>(a.num_) * b.num_;
        if (fits(n)) return small(static_cast<std::int64_t>(n), 1);
        return from_i128(n, 1);
      }
      std::int64_t g1 = std::gcd(a.num_, b.den_);
      std::int64_t g2 = std::gcd(b.num_, a.den_);
      __int128 n = static_cast<__int128>(a.num_ / g1) * (b.num_ / g2);
      __int128 d = static_cast<__int128>(a.den_ / g2) * (b.den_ / g1);
      if (fits(n) && fits(d)) return small(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
      return from_i128(n, d);
    }
    return Scalar(mpq_class(a.to_mpq() * b.to_mpq()));
  }

  Scalar inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (big_) return Scalar(mpq_class(1 / *big_));
    Scalar r;
    r.num_ = num_ < 0 ? -den_ : den_;
    r.den_ = num_ < 0 ? -num_ : num_;
    return r;
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    if (!a.big_ && !b.big_) {
      __int128 l = static_cast<__int128>(a.num_) * b.den_;
      __int128 r = static_cast<__int128>(b.num_) * a.den_;
      return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::unique_ptr<mpq_class> big_;

  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  static bool fits(__int128 v) { return v <= kMax && v >= -kMax; }

  static Scalar small(std::int64_t n, std::int64_t d) {
    Scalar r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }

  static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
    constexpr unsigned __int128 lim = std::numeric_limits<std::uint64_t>::max();
    if (a <= lim && b <= lim) return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    while (b != 0) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static mpz_class i64_to_mpz(std::int64_t v) {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), v);
    return z;
  }

  static mpz_class i128_to_mpz(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::uint64_t limbs[2] = {static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(u >> 64)};
    mpz_class z;
    mpz_import(z.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, limbs);
    if (neg) z = -z;
    return z;
  }

  static Scalar from_i128(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) return Scalar();
    unsigned __int128 an = n < 0 ? -static_cast<unsigned __int128>(n) : static_cast<unsigned __int128>(n);
    unsigned __int128 g = gcd128(an, static_cast<unsigned __int128>(d));
    if (g > 1) {
      n /= static_cast<__int128>(g);
      d /= static_cast<__int128>(g);
    }
    if (fits(n) && fits(d)) return small(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    Scalar r;
    r.big_ = std::make_unique<mpq_class>(i128_to_mpz(n), i128_to_mpz(d));
    return r;
  }

  void set_big(const mpq_class& q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (mpz_fits_slong_p(n.get_mpz_t()) && mpz_fits_slong_p(d.get_mpz_t())) {
      long nn = mpz_get_si(n.get_mpz_t());
      long dd = mpz_get_si(d.get_mpz_t());
      if (nn != std::numeric_limits<long>::min()) {
        num_ = nn;
        den_ = dd;
        big_.reset();
        return;
      }
    }
    num_ = 0;
    den_ = 1;
    big_ = std::make_unique<mpq_class>(q);
  }
};

inline Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

}  // namespace slmod
