#include "extremal/families.hpp"

#include <algorithm>

namespace extremal {

namespace {

const BigInt& s(int i) { return sylvester(i); }

BigInt exact_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  // small operands get a checked division; large ones trust the identity and
  // leave the check to the adjunction sum
  if (mpz_sizeinbase(a.get_mpz_t(), 2) < (1u << 20)) {
    BigInt r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw std::logic_error("non-integral weight " + a.get_str() + "/" + b.get_str());
  } else {
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  return q;
}

BigInt pow(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

// 2^{±e} style exponents can be negative at n = 1.
BigRat pow_signed(const BigInt& base, long e) {
  if (e >= 0) return BigRat(pow(base, static_cast<unsigned long>(e)));
  return make_rational(1, pow(base, static_cast<unsigned long>(-e)));
}

struct Parity {
  bool odd;
  int m;
};

// n = 2m + 1 or n = 2m + offset_even
Parity split(int n, int odd_offset, int even_offset) {
  if (n % 2) return {true, (n - odd_offset) / 2};
  return {false, (n - even_offset) / 2};
}

BigInt cy_degree(int n) { return (2 * s(n) - 3) * (s(n) - 1); }  // 1a
BigInt one_b_degree(int n) {
  const BigInt& t = s(n - 1);
  BigInt f = 3 * t - 4;
  return (t - 1) * f * f;
}
BigInt mixed_degree(int m) { return (s(m) - 1) * (2 * s(m) - 1); }  // 3a even, 3b, 4a odd
BigInt four_b_w(int m) {
  const BigInt& t = s(m - 2);
  return 4 * t * t * t - 6 * t * t + 5 * t - 2;
}

using Emit = const std::function<void(const BigInt&, int)>&;

// d / s_j for d = c (s_K - 1), j in [from, to], emitted with j descending.
// s_K - 1 is the product of s_0 .. s_{K-1}, so with R = c s_{j+1} ... s_{K-1}
// the quotient is R s_j - R; one unbalanced product per weight instead of a
// division of d.
void emit_quotients(const BigInt& c, int K, int from, int to_inclusive, int mult, Emit fn) {
  BigInt r = c;
  for (int j = K - 1; j > to_inclusive; --j) r *= s(j);
  BigInt next;
  for (int j = to_inclusive; j >= from; --j) {
    next = r * s(j);
    r = next - r;
    if (mpz_sizeinbase(r.get_mpz_t(), 2) < (1u << 16) && r * s(j) != c * (s(K) - 1)) {
      throw std::logic_error("quotient identity failed");
    }
    fn(r, mult);
    r.swap(next);
  }
}

}  // namespace

std::string_view to_string(ProblemId p) {
  static constexpr std::string_view names[] = {"1a", "1b", "2a", "2b", "3a", "3b", "4a", "4b"};
  return names[static_cast<int>(p)];
}

std::optional<ProblemId> problem_from_string(std::string_view text) {
  for (ProblemId p : kAllProblems) {
    if (to_string(p) == text) return p;
  }
  return std::nullopt;
}

bool bounds_vanishing(ProblemId p) {
  return p == ProblemId::P1b || p == ProblemId::P2b || p == ProblemId::P3b || p == ProblemId::P4b;
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::Single:
      return "single";
    case Branch::Odd:
      return "odd";
    case Branch::Even:
      return "even";
  }
  return {};
}

std::optional<Branch> branch_from_string(std::string_view text) {
  for (Branch b : {Branch::Single, Branch::Odd, Branch::Even}) {
    if (to_string(b) == text) return b;
  }
  return std::nullopt;
}

Branch branch_for(ProblemId p, int n) {
  switch (p) {
    case ProblemId::P1a:
    case ProblemId::P1b:
    case ProblemId::P2a:
      return Branch::Single;
    default:
      return n % 2 ? Branch::Odd : Branch::Even;
  }
}

void check_dimension(ProblemId p, int n) {
  int min_n = 1;
  const bool odd = n % 2 != 0;
  switch (p) {
    case ProblemId::P1a:
    case ProblemId::P1b:
      min_n = 1;
      break;
    case ProblemId::P2a:
      min_n = 2;
      break;
    case ProblemId::P2b:
      min_n = odd ? 3 : 6;
      break;
    case ProblemId::P3a:
      min_n = odd ? 1 : 2;
      break;
    case ProblemId::P3b:
      min_n = odd ? 5 : 6;
      break;
    case ProblemId::P4a:
      min_n = odd ? 5 : 4;
      break;
    case ProblemId::P4b:
      min_n = odd ? 9 : 8;
      break;
  }
  if (n < min_n || n > kGenerationMaxDim) {
    std::string parity = branch_for(p, n) == Branch::Single ? "" : (odd ? " odd" : " even");
    throw DimensionOutOfRange("problem " + std::string(to_string(p)) + parity + " needs " +
                              std::to_string(min_n) + " <= n <= " +
                              std::to_string(kGenerationMaxDim) + ", got " + std::to_string(n));
  }
}

std::optional<BoundSpec> bound_spec(ProblemId p, int n) {
  check_dimension(p, n);
  const bool odd = n % 2 != 0;
  switch (p) {
    case ProblemId::P1a:
      if (n >= 2) return BoundSpec{2 * n, false};
      break;
    case ProblemId::P2a:
      if (n >= 3) return BoundSpec{2 * n, false};
      break;
    case ProblemId::P3a:
      if (n >= (odd ? 5 : 4)) return BoundSpec{n, false};
      break;
    case ProblemId::P4a:
      if (n >= (odd ? 7 : 6)) return BoundSpec{n, false};
      break;
    case ProblemId::P1b:
      if (n >= 2) return BoundSpec{2 * (n - 1), false};
      break;
    case ProblemId::P2b:
      return BoundSpec{odd ? n - 3 : n - 4, false};
    case ProblemId::P3b:
      return BoundSpec{odd ? n - 3 : n - 4, true};
    case ProblemId::P4b:
      return BoundSpec{odd ? n - 6 : n - 5, false};
  }
  return std::nullopt;
}

BigInt family_degree(ProblemId p, int n) {
  check_dimension(p, n);
  switch (p) {
    case ProblemId::P1a:
      return cy_degree(n);
    case ProblemId::P1b:
      return one_b_degree(n);
    case ProblemId::P2a:
      return cy_degree(n - 1);
    case ProblemId::P2b: {
      auto [odd, m] = split(n, 1, 2);
      return 2 * cy_degree(m);
    }
    case ProblemId::P3a: {
      auto [odd, m] = split(n, 1, 2);
      return odd ? BigInt(2 * (s(m + 1) - 1)) : BigInt(2 * mixed_degree(m));
    }
    case ProblemId::P3b: {
      auto [odd, m] = split(n, 1, 2);
      return 2 * mixed_degree(m);
    }
    case ProblemId::P4a: {
      auto [odd, m] = split(n, 3, 2);
      return odd ? BigInt(2 * mixed_degree(m)) : BigInt(2 * (s(m + 1) - 1));
    }
    case ProblemId::P4b: {
      auto [odd, m] = split(n, 3, 2);
      return 2 * (s(m) - 1) * four_b_w(m);
    }
  }
  return 0;
}

void visit_weights(ProblemId p, int n, Emit fn) {
  check_dimension(p, n);
  switch (p) {
    case ProblemId::P1a:
    case ProblemId::P2a: {
      const int k = p == ProblemId::P1a ? n : n - 1;
      emit_quotients(2 * s(k) - 3, k, 0, k - 1, 1, fn);
      fn(s(k) - 1, 1);
      fn(s(k) - 2, 1);
      if (p == ProblemId::P2a) fn(1, 1);
      return;
    }
    case ProblemId::P1b: {
      const BigInt& t = s(n - 1);
      emit_quotients((3 * t - 4) * (3 * t - 4), n - 1, 0, n - 2, 1, fn);
      fn((t - 1) * (3 * t - 4), 1);
      fn((t - 1) * (3 * t - 5), 1);
      fn(3 * t * t - 9 * t + 7, 1);
      return;
    }
    case ProblemId::P2b: {
      auto [odd, m] = split(n, 1, 2);
      const BigInt c = 2 * s(m) - 3;
      if (odd) {
        emit_quotients(c, m, 0, m - 1, 2, fn);
      } else {
        const BigInt d = cy_degree(m);
        emit_quotients(c, m, 0, m - 2, 2, fn);
        fn(exact_div(d, s(m - 1)), 1);
        fn(exact_div(d, 2 * s(m - 1)), 2);
      }
      fn(2 * (s(m) - 1), 1);
      fn(s(m) - 1, 1);
      fn(s(m) - 2, 1);
      return;
    }
    case ProblemId::P3a: {
      auto [odd, m] = split(n, 1, 2);
      if (odd) {
        emit_quotients(1, m + 1, 0, m, 2, fn);
      } else {
        emit_quotients(2 * s(m) - 1, m, 0, m - 1, 2, fn);
        fn(2 * (s(m) - 1), 1);
        fn(s(m) - 1, 2);
      }
      fn(1, 1);
      return;
    }
    case ProblemId::P3b: {
      auto [odd, m] = split(n, 1, 2);
      const BigInt c = 2 * s(m) - 1;
      if (odd) {
        emit_quotients(c, m, 0, m - 1, 2, fn);
      } else {
        const BigInt d = mixed_degree(m);
        emit_quotients(c, m, 0, m - 2, 2, fn);
        fn(exact_div(d, s(m - 1)), 1);
        fn(exact_div(d, 2 * s(m - 1)), 2);
      }
      fn(2 * s(m) - 2, 1);
      fn(s(m - 1) * s(m - 1), 1);
      fn((s(m - 1) - 1) * (s(m - 1) - 1), 1);
      return;
    }
    case ProblemId::P4a: {
      auto [odd, m] = split(n, 3, 2);
      if (odd) {
        emit_quotients(2 * s(m) - 1, m, 0, m - 1, 2, fn);
        fn(2 * (s(m) - 1), 1);
        fn(s(m) - 1, 2);
      } else {
        emit_quotients(1, m + 1, 0, m, 2, fn);
      }
      fn(1, 2);
      return;
    }
    case ProblemId::P4b: {
      auto [odd, m] = split(n, 3, 2);
      const BigInt w = four_b_w(m);
      if (odd) {
        const BigInt d = (s(m) - 1) * w;
        emit_quotients(w, m, 0, m - 3, 2, fn);
        fn(exact_div(d, s(m - 2)), 1);
        fn(exact_div(d, 2 * s(m - 2)), 2);
        fn(exact_div(d, s(m - 1)), 2);
      } else {
        emit_quotients(w, m, 0, m - 1, 2, fn);
      }
      fn(s(m - 2) * (2 * s(m - 1) - 1), 2);
      fn(2 * (s(m - 2) - 1) * s(m - 1), 2);
      return;
    }
  }
}

BigInt weight_sum_minus_degree(ProblemId p, int n) {
  BigInt total = 0;
  visit_weights(p, n, [&](const BigInt& w, int mult) { total += mult * w; });
  total -= family_degree(p, n);
  return total;
}

namespace {

BigRat closed_form_volume(ProblemId p, int n) {
  auto one_a = [](int k) -> BigRat {
    const BigInt& t = s(k);
    BigInt den = pow(2 * t - 3, k - 1) * pow(t - 1, k - 1) * (t - 2);
    return make_rational(1, den);
  };
  auto three_a_odd = [](int n_odd) -> BigRat {
    const int m = (n_odd - 1) / 2;
    return BigRat(2) * pow_signed(s(m + 1) - 1, -(n_odd - 2));
  };
  auto three_a_even = [](int n_even) -> BigRat {
    const int m = (n_even - 2) / 2;
    return pow_signed(s(m) - 1, -2 * m) * pow_signed(2 * s(m) - 1, -(2 * m - 1));
  };
  switch (p) {
    case ProblemId::P1a:
      return one_a(n);
    case ProblemId::P2a:
      return one_a(n - 1);
    case ProblemId::P3a:
      return n % 2 ? three_a_odd(n) : three_a_even(n);
    case ProblemId::P4a:
      return n % 2 ? three_a_even(n - 1) : three_a_odd(n - 1);
    default:
      throw std::logic_error("no closed-form volume for problem " + std::string(to_string(p)));
  }
}

std::optional<BigInt> expected_vanishing(ProblemId p, int n) {
  switch (p) {
    case ProblemId::P1b: {
      const BigInt& t = s(n - 1);
      return BigInt(3 * t * t - 9 * t + 7);
    }
    case ProblemId::P2b: {
      auto [odd, m] = split(n, 1, 2);
      return BigInt(s(m) - 2);
    }
    case ProblemId::P3b: {
      auto [odd, m] = split(n, 1, 2);
      return BigInt((s(m - 1) - 1) * (s(m - 1) - 1));
    }
    case ProblemId::P4b: {
      auto [odd, m] = split(n, 3, 2);
      return BigInt(2 * (s(m - 2) - 1) * s(m - 1));
    }
    default:
      return std::nullopt;
  }
}

VarietyClass expected_variety(ProblemId p) {
  switch (p) {
    case ProblemId::P2a:
    case ProblemId::P2b:
      return {VarietyClass::Kind::Fano, 1};
    case ProblemId::P3a:
    case ProblemId::P3b:
      return {VarietyClass::Kind::GeneralType, 1};
    default:
      return {VarietyClass::Kind::CalabiYau, 0};
  }
}

}  // namespace

BigRat FamilyMember::bound_quantity() const {
  if (expected_M) return BigRat(*expected_M);
  BigRat q = 1 / expected_volume;
  q.canonicalize();
  return q;
}

FamilyMember generate(ProblemId p, int n, const GenerateOptions& options) {
  check_dimension(p, n);
  std::vector<BigInt> weights;
  std::uint64_t bits = 0;
  visit_weights(p, n, [&](const BigInt& w, int mult) {
    bits += mult * mpz_sizeinbase(w.get_mpz_t(), 2);
    if (bits > options.max_total_bits) {
      throw TooLarge("weights of " + std::string(to_string(p)) + " n=" + std::to_string(n) +
                     " exceed the memory guard");
    }
    for (int i = 0; i < mult; ++i) weights.push_back(w);
  });
  Hypersurface h(WeightSystem(std::move(weights)), family_degree(p, n));

  const bool vanishing = bounds_vanishing(p);
  BigRat volume = vanishing || !options.closed_form_volume ? hyp_volume(h) : closed_form_volume(p, n);
  const bool canonical_only = p == ProblemId::P1a || p == ProblemId::P1b;
  return FamilyMember{p,
                      n,
                      branch_for(p, n),
                      std::move(h),
                      expected_variety(p),
                      canonical_only ? SingularityClass::CanonicalAtLeast : SingularityClass::Terminal,
                      std::move(volume),
                      expected_vanishing(p, n),
                      bound_spec(p, n)};
}

std::vector<CatalogEntry> sporadic_catalog() {
  using K = VarietyClass::Kind;
  return {
      {"X28", make_hypersurface({14, 5, 4, 3, 1}, 28), {K::GeneralType, 1},
       SingularityClass::Terminal, make_rational(1, 30)},
      {"X64", make_hypersurface({19, 16, 11, 9, 7, 1}, 64), {K::GeneralType, 1},
       SingularityClass::Terminal, make_rational(4, 13167)},
      {"X10", make_hypersurface({5, 2, 1, 1}, 10), {K::GeneralType, 1},
       SingularityClass::Terminal, make_rational(1, 1)},
      {"X6-del-Pezzo", make_hypersurface({3, 2, 1, 1}, 6), {K::Fano, 1},
       SingularityClass::Terminal, make_rational(1, 1)},
      {"X6-elliptic", make_hypersurface({3, 2, 1}, 6), {K::CalabiYau, 0},
       SingularityClass::Terminal, make_rational(1, 1)},
  };
}

BigRat kollar_pair_volume(int n) {
  if (n < 0) throw std::invalid_argument("kollar_pair_volume needs n >= 0");
  return make_rational(1, pow(s(n + 2) - 1, static_cast<unsigned long>(n)));
}

std::pair<BigRat, BigInt> product_with_curve(const BigRat& vol_z, const BigInt& pg_z, int n,
                                             int g) {
  if (g < 2 || n < 2) throw std::invalid_argument("product_with_curve needs g >= 2 and n >= 2");
  BigRat vol = vol_z * BigRat(n * (2 * g - 2));
  vol.canonicalize();
  return {vol, BigInt(g) * pg_z};
}

}  // namespace extremal
