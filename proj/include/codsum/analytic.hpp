#pragma once

// Euler-product computations over primes p = 2 (mod 3): the divergent
// ratio product, reciprocal sums, zeta constants, and checkpointing.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "codsum/arith.hpp"

namespace codsum::analytic {

/// Neumaier two-term summation in extended precision.
struct CompensatedSum {
  long double hi = 0.0L;
  long double lo = 0.0L;

  void add(long double x);
  long double value() const { return hi + lo; }

  friend bool operator==(const CompensatedSum&, const CompensatedSum&) = default;
};

inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 20;
inline constexpr int kCheckpointVersion = 1;

/// Running state over all primes p <= limit_processed with p = 2 (mod 3).
struct RatioState {
  std::uint64_t limit_processed = 1;
  std::uint64_t prime_count = 0;
  CompensatedSum log_r;       // sum of log term(p)
  CompensatedSum recip_sum;   // sum of 1/p
  std::uint64_t segment_size = kDefaultSegmentSize;
  int version = kCheckpointVersion;

  long double r_estimate() const;

  friend bool operator==(const RatioState&, const RatioState&) = default;
};

struct RatioTerm {
  arith::BigRational exact;  // (p^6+1)(p+1) / ((p^2+1)(p^5+1))
  long double log = 0.0L;
};

RatioTerm ratio_term(std::uint64_t p);

/// log term(p) in extended precision, without forming the rational.
long double ratio_term_log(std::uint64_t p);

using ProgressFn = std::function<void(const RatioState&)>;

struct AccumulateOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
  ProgressFn progress;   // called each time another progress_every of range is complete
  std::uint64_t progress_every = 100'000'000;
};

/// Extends `state` to every prime p <= limit with p = 2 (mod 3). Segments are
/// sieved concurrently and folded one prime at a time in ascending order, so
/// the result is bit-identical however the range is split.
RatioState accumulate_ratio(std::uint64_t limit, RatioState state = {}, const AccumulateOptions& options = {});

/// recip_sum - (1/2) log log(limit_processed). Requires limit_processed >= 100.
long double reciprocal_model_gap(const RatioState& state);

struct ZetaValue {
  unsigned s = 2;
  long double value = 0.0L;
};

/// Direct series plus an Euler-Maclaurin tail through the B_8 term. s >= 2.
ZetaValue zeta(unsigned s);

struct EulerProduct {
  long double partial = 0.0L;  // prod_{p <= limit} (1 + p^-s)
  long double target = 0.0L;   // zeta(s) / zeta(2s)
  long double gap = 0.0L;      // target - partial
};

EulerProduct euler_product_check(unsigned s, std::uint64_t limit);

struct Extrapolation {
  long double log10_bound = 0.0L;  // log10 of the m where the model reaches the target
  long double fitted_constant = 0.0L;
  bool degenerate = false;
};

/// Fits C = log r - (1/2) log log m at the current state and solves
/// (1/2) log log m + C = log target. A model extrapolation only.
Extrapolation crossing_extrapolation(const RatioState& state, long double target = 21.0L);

/// Primes p <= limit with p % 6 == residue (residue 1 or 5), via the wheel sieve.
std::vector<std::uint64_t> wheel_primes(std::uint64_t limit, unsigned residue,
                                        std::uint64_t segment_size = kDefaultSegmentSize);

nlohmann::json checkpoint_json(const RatioState& state);
/// Throws std::runtime_error on a CRC mismatch or unknown version.
RatioState restore_checkpoint(const nlohmann::json& j);
void save_checkpoint(const RatioState& state, const std::string& path);
RatioState load_checkpoint(const std::string& path);

}  // namespace codsum::analytic
