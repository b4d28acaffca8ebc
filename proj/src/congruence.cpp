#include "hgv/congruence.hpp"

#include <stdexcept>

namespace hgv {

ModRing::ModRing(std::uint64_t modulus) : m_(modulus) {
  if (modulus < 2 || modulus >= (std::uint64_t{1} << 63)) {
    throw std::invalid_argument("modulus out of range");
  }
}

std::uint64_t ModRing::reduce(long long v) const {
  const long long m = static_cast<long long>(m_);
  long long r = v % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t ModRing::reduce(const BigInt& v) const {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), m_);
  return r.get_ui();
}

std::uint64_t ModRing::add(std::uint64_t a, std::uint64_t b) const {
  std::uint64_t s = a + b;
  return s >= m_ ? s - m_ : s;
}

std::uint64_t ModRing::sub(std::uint64_t a, std::uint64_t b) const {
  return a >= b ? a - b : a + (m_ - b);
}

std::uint64_t ModRing::mul(std::uint64_t a, std::uint64_t b) const {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m_);
}

std::uint64_t ModRing::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t out = 1 % m_;
  while (e > 0) {
    if (e & 1) out = mul(out, a);
    a = mul(a, a);
    e >>= 1;
  }
  return out;
}

std::optional<std::uint64_t> ModRing::inverse(std::uint64_t a) const {
  BigInt inv;
  const BigInt x(static_cast<unsigned long>(a));
  const BigInt m(static_cast<unsigned long>(m_));
  if (mpz_invert(inv.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return inv.get_ui();
}

bool is_prime(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

int legendre(long a, long p) {
  if (p < 3 || !is_prime(p)) {
    throw std::invalid_argument("legendre symbol needs an odd prime, got " + std::to_string(p));
  }
  const ModRing ring(static_cast<std::uint64_t>(p));
  const std::uint64_t r = ring.reduce(static_cast<long long>(a));
  if (r == 0) return 0;
  return ring.pow(r, static_cast<std::uint64_t>(p - 1) / 2) == 1 ? 1 : -1;
}

std::string to_string(CongruenceResult r) {
  switch (r) {
    case CongruenceResult::Holds: return "holds";
    case CongruenceResult::Fails: return "fails";
    case CongruenceResult::Inapplicable: return "inapplicable";
  }
  return "?";
}

std::string SupercongruenceCase::description() const {
  const std::string b = binomials == BinomialPair::TwoThree ? "C(2k,k)C(3k,k)" : "C(2k,k)C(4k,2k)";
  return "sum " + b + "/(" + std::to_string(lhs_base) + ")^k == " +
         (symbol_p_over_3 ? "(p/3)" : "(-2/p)") + " sum " + b + "/" + std::to_string(rhs_base) +
         "^k mod p^2";
}

const std::vector<SupercongruenceCase>& supercongruence_cases() {
  static const std::vector<SupercongruenceCase> cases = {
      {1, BinomialPair::TwoThree, -216, 24, true},
      {2, BinomialPair::TwoFour, -192, 48, false},
      {3, BinomialPair::TwoFour, -4032, 63, false},
      {4, BinomialPair::TwoFour, 576, 72, false},
  };
  return cases;
}

namespace {

const SupercongruenceCase& case_for(int which) {
  if (which < 1 || which > 4) {
    throw std::invalid_argument("supercongruence index must be 1..4, got " + std::to_string(which));
  }
  return supercongruence_cases()[static_cast<std::size_t>(which - 1)];
}

/// B(k) for k = 0..p-1, exact integers updated by their term ratio.
std::vector<BigInt> binomial_products(BinomialPair pair, long p) {
  std::vector<BigInt> out;
  out.reserve(static_cast<std::size_t>(p));
  BigInt c2 = 1;  // C(2k,k)
  BigInt c3 = 1;  // C(3k,k) or C(4k,2k)
  for (long k = 0; k < p; ++k) {
    out.push_back(c2 * c3);
    const unsigned long K = static_cast<unsigned long>(k);
    // C(2k+2,k+1) = C(2k,k) (2k+1)(2k+2) / (k+1)^2
    c2 *= (2 * K + 1) * (2 * K + 2);
    mpz_divexact_ui(c2.get_mpz_t(), c2.get_mpz_t(), (K + 1) * (K + 1));
    if (pair == BinomialPair::TwoThree) {
      // C(3k+3,k+1) = C(3k,k) (3k+1)(3k+2)(3k+3) / ((k+1)(2k+1)(2k+2))
      c3 *= (3 * K + 1) * (3 * K + 2);
      c3 *= 3 * K + 3;
      mpz_divexact_ui(c3.get_mpz_t(), c3.get_mpz_t(), (K + 1) * (2 * K + 1));
      mpz_divexact_ui(c3.get_mpz_t(), c3.get_mpz_t(), 2 * K + 2);
    } else {
      // C(4k+4,2k+2) = C(4k,2k) (4k+1)(4k+2)(4k+3)(4k+4) / ((2k+1)(2k+2))^2
      c3 *= (4 * K + 1) * (4 * K + 2);
      c3 *= (4 * K + 3) * (4 * K + 4);
      mpz_divexact_ui(c3.get_mpz_t(), c3.get_mpz_t(), (2 * K + 1) * (2 * K + 2));
      mpz_divexact_ui(c3.get_mpz_t(), c3.get_mpz_t(), (2 * K + 1) * (2 * K + 2));
    }
  }
  return out;
}

/// sum_{k<p} B(k) u^{-k} mod p^2 using one inverse of u.
std::uint64_t truncated_sum(const ModRing& ring, const std::vector<BigInt>& products, long base) {
  const std::uint64_t inv = *ring.inverse(ring.reduce(static_cast<long long>(base)));
  std::uint64_t power = 1;
  std::uint64_t sum = 0;
  for (const auto& b : products) {
    sum = ring.add(sum, ring.mul(ring.reduce(b), power));
    power = ring.mul(power, inv);
  }
  return sum;
}

std::vector<CongruenceRecord> run_scan(long pmax, std::optional<int> which, bool parallel) {
  if (which) case_for(*which);
  std::vector<std::pair<long, int>> jobs;
  for (long p = 5; p <= pmax; ++p) {
    if (!is_prime(p)) continue;
    for (int w = 1; w <= 4; ++w) {
      if (!which || *which == w) jobs.emplace_back(p, w);
    }
  }
  std::vector<CongruenceRecord> records(jobs.size());
  const long n = static_cast<long>(jobs.size());
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long j = 0; j < n; ++j) records[j] = supercongruence_record(jobs[j].second, jobs[j].first);
  } else {
    for (long j = 0; j < n; ++j) records[j] = supercongruence_record(jobs[j].second, jobs[j].first);
  }
  std::vector<CongruenceRecord> out;
  for (auto& r : records) {
    if (r.result != CongruenceResult::Inapplicable) out.push_back(r);
  }
  return out;
}

}  // namespace

CongruenceRecord supercongruence_record(int which, long p) {
  const SupercongruenceCase& c = case_for(which);
  CongruenceRecord rec;
  rec.which = which;
  rec.p = p;
  if (p <= 3 || !is_prime(p) || c.lhs_base % p == 0 || c.rhs_base % p == 0) return rec;
  const ModRing ring(static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p));
  const auto products = binomial_products(c.binomials, p);
  rec.symbol = c.symbol_p_over_3 ? legendre(p, 3) : legendre(-2, p);
  rec.lhs = truncated_sum(ring, products, c.lhs_base);
  rec.rhs = ring.mul(ring.reduce(static_cast<long long>(rec.symbol)),
                     truncated_sum(ring, products, c.rhs_base));
  rec.result = rec.lhs == rec.rhs ? CongruenceResult::Holds : CongruenceResult::Fails;
  return rec;
}

CongruenceResult supercongruence_check(int which, long p) {
  return supercongruence_record(which, p).result;
}

std::vector<CongruenceRecord> scan(long pmax, std::optional<int> which) {
  return run_scan(pmax, which, true);
}

std::vector<CongruenceRecord> scan_serial(long pmax, std::optional<int> which) {
  return run_scan(pmax, which, false);
}

}  // namespace hgv
