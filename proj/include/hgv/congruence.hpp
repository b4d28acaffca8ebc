#pragma once

// Supercongruences mod p^2 between truncated binomial sums
//
//   sum_{k<p} B(k)/u^k == (symbol) * sum_{k<p} B(k)/v^k   (mod p^2)
//
// with B(k) = C(2k,k)C(3k,k) or C(2k,k)C(4k,2k).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hgv/numeric.hpp"

namespace hgv {

/// Residues modulo m < 2^63.
class ModRing {
 public:
  explicit ModRing(std::uint64_t modulus);

  std::uint64_t modulus() const { return m_; }
  std::uint64_t reduce(long long v) const;
  std::uint64_t reduce(const BigInt& v) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Inverse of a unit; nullopt when gcd(a, m) > 1.
  std::optional<std::uint64_t> inverse(std::uint64_t a) const;

 private:
  std::uint64_t m_;
};

/// Deterministic trial division.
bool is_prime(long n);

/// Legendre symbol (a/p) by Euler's criterion. Throws std::invalid_argument
/// unless p is an odd prime.
int legendre(long a, long p);

enum class CongruenceResult { Holds, Fails, Inapplicable };

std::string to_string(CongruenceResult r);

enum class BinomialPair { TwoThree, TwoFour };

struct SupercongruenceCase {
  int which = 1;
  BinomialPair binomials = BinomialPair::TwoThree;
  long lhs_base = 1;
  long rhs_base = 1;
  /// (p/3) when true, (-2/p) otherwise.
  bool symbol_p_over_3 = true;
  std::string description() const;
};

/// The four cases, which = 1..4.
const std::vector<SupercongruenceCase>& supercongruence_cases();

struct CongruenceRecord {
  int which = 0;
  long p = 0;
  CongruenceResult result = CongruenceResult::Inapplicable;
  std::uint64_t lhs = 0;  // residues mod p^2 (0 when inapplicable)
  std::uint64_t rhs = 0;  // symbol * right-hand sum
  int symbol = 0;
};

/// Throws std::invalid_argument for which outside 1..4.
CongruenceRecord supercongruence_record(int which, long p);
CongruenceResult supercongruence_check(int which, long p);

/// Applicable records for primes 5 <= p <= pmax, ordered by p then case.
/// `which` restricts to one case.
std::vector<CongruenceRecord> scan(long pmax, std::optional<int> which = std::nullopt);
std::vector<CongruenceRecord> scan_serial(long pmax, std::optional<int> which = std::nullopt);

}  // namespace hgv
