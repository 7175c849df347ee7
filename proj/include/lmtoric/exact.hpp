// Exact arithmetic foundation: arbitrary-precision integers and rationals
// (GMP-backed), deterministic pseudo-randomness for test harnesses, and
// "p/q" string interchange for rationals.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmtoric {

using Int = mpz_class;
using Rat = mpq_class;

using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Serializes in lowest terms with positive denominator; integers print
// without the "/1" suffix.
inline std::string rat_to_string(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return make_rat(Int(s), 1);
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

inline std::string zvec_to_string(const ZVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].get_str();
  }
  return out + ")";
}

inline bool is_zero_vector(const ZVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Lexicographic order on integer vectors; shorter vectors compare first.
inline bool lex_less(const ZVec& a, const ZVec& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

struct ZVecLess {
  bool operator()(const ZVec& a, const ZVec& b) const { return lex_less(a, b); }
};

// splitmix64: a small self-contained generator so that seeded suites are
// bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below(0)");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  // uniform in [lo, hi] inclusive
  long range(long lo, long hi) {
    if (hi < lo) throw std::invalid_argument("Rng::range: empty interval");
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // nonzero rational with numerator in [-span, span] and denominator in [1, span]
  Rat nonzero_rat(long span = 5) {
    Int num = 0;
    while (num == 0) num = range(-span, span);
    return make_rat(num, range(1, span));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace lmtoric
