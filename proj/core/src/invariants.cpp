#include "bott/invariants.hpp"

#include <algorithm>
#include <cstdio>

#include "bott/error.hpp"
#include "bott/linalg.hpp"
#include "bott/ring.hpp"

namespace bott {

bool square_is_zero(const BottMatrix& m, const DegreeTwoClass& z) { return all_zero(square(m, z)); }

bool alpha_square_zero(const BottMatrix& m, int j) { return square_is_zero(m, m.alpha(j)); }

SquareVanishingSet square_vanishing_set(const BottMatrix& m) {
  SquareVanishingSet x;
  for (int j = 1; j <= m.n(); ++j) {
    const DegreeTwoClass a = m.alpha(j);
    if (!square_is_zero(m, a)) continue;
    DegreeTwoClass z = DegreeTwoClass::basis(m.n(), j);
    const bool even = std::all_of(a.coeffs.begin(), a.coeffs.end(),
                                  [](const Integer& v) { return mpz_even_p(v.get_mpz_t()) != 0; });
    if (even) {
      DegreeTwoClass half = a;
      for (auto& v : half.coeffs) mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), 2);
      z -= half;
    } else {
      z *= 2;
      z -= a;
    }
    x.elements.push_back(z.canonical_sign());
    x.stages.push_back(j);
  }
  return x;
}

bool is_q_trivial(const BottMatrix& m) {
  for (int j = 1; j <= m.n(); ++j) {
    if (!alpha_square_zero(m, j)) return false;
  }
  return true;
}

bool is_well_ordered(const BottMatrix& m) {
  bool seen_nonzero = false;
  for (int j = 1; j <= m.n(); ++j) {
    const bool zero = alpha_square_zero(m, j);
    if (zero && seen_nonzero) return false;
    if (!zero) seen_nonzero = true;
  }
  return true;
}

std::optional<std::string> Fingerprint::first_difference(const Fingerprint& a, const Fingerprint& b) {
  if (a.n != b.n) return "n";
  if (a.t != b.t) return "t";
  if (a.span_index != b.span_index) return "spanIndex";
  if (a.product_divisors != b.product_divisors) return "productDivisors";
  if (a.mod2_square_zero_count != b.mod2_square_zero_count) return "mod2SquareZeroCount";
  return std::nullopt;
}

nlohmann::json Fingerprint::to_json() const {
  auto divisors = nlohmann::json::array();
  for (const auto& d : product_divisors) divisors.push_back(integer_to_json(d));
  return {{"n", n},
          {"t", t},
          {"spanIndex", integer_to_json(span_index)},
          {"productDivisors", std::move(divisors)},
          {"mod2SquareZeroCount", mod2_square_zero_count}};
}

Fingerprint Fingerprint::from_json(const nlohmann::json& j) {
  try {
    Fingerprint f;
    f.n = j.at("n").get<int>();
    f.t = j.at("t").get<int>();
    f.span_index = integer_from_json(j.at("spanIndex"));
    for (const auto& d : j.at("productDivisors")) f.product_divisors.push_back(integer_from_json(d));
    f.mod2_square_zero_count = j.at("mod2SquareZeroCount").get<std::uint64_t>();
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw BottError(ErrorCode::ParseError, std::string("bad fingerprint: ") + e.what());
  }
}

std::string Fingerprint::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Fingerprint fingerprint(const BottMatrix& m) {
  const int n = m.n();
  const SquareVanishingSet x = square_vanishing_set(m);
  Fingerprint f;
  f.n = n;
  f.t = x.t();

  if (f.t == n) {
    IntMatrix rows(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) rows.at(r, c) = x.elements[static_cast<std::size_t>(r)].coeffs[static_cast<std::size_t>(c)];
    }
    Integer index = 1;
    for (const auto& d : elementary_divisors(rows)) index *= d;
    f.span_index = index;
  } else {
    f.span_index = 0;
  }

  // formal products z_a z_b, a <= b, mapped into H^4
  const int d4 = degree_four_rank(n);
  std::vector<std::vector<Integer>> products;
  for (int a = 0; a < f.t; ++a) {
    for (int b = a; b < f.t; ++b) {
      products.push_back(degree_four_product(m, x.elements[static_cast<std::size_t>(a)], x.elements[static_cast<std::size_t>(b)]));
    }
  }
  IntMatrix pm(static_cast<int>(products.size()), d4);
  for (int r = 0; r < pm.rows(); ++r) {
    for (int c = 0; c < d4; ++c) pm.at(r, c) = products[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  f.product_divisors = elementary_divisors(std::move(pm));

  // z^2 mod 2 = sum_i c_i alpha_i x_i since cross terms carry a factor 2
  std::uint64_t count = 0;
  for (Mask bits = 0; bits < (Mask{1} << n); ++bits) {
    std::vector<int> parity(static_cast<std::size_t>(d4), 0);
    for (int i = 1; i <= n; ++i) {
      if (!((bits >> (i - 1)) & 1U)) continue;
      for (int k = 1; k < i; ++k) {
        if (mpz_odd_p(m.entry(k, i).get_mpz_t())) parity[static_cast<std::size_t>(pair_index(k, i))] ^= 1;
      }
    }
    if (std::all_of(parity.begin(), parity.end(), [](int p) { return p == 0; })) ++count;
  }
  f.mod2_square_zero_count = count;
  return f;
}

}  // namespace bott
