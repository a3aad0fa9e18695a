#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "codsum/analytic.hpp"
#include "codsum/arith.hpp"
#include "oracles.hpp"

using namespace codsum;
using analytic::RatioState;
using arith::BigInt;
using arith::BigRational;

namespace {

BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

constexpr long double kPi = std::numbers::pi_v<long double>;

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("codsum_test_" + name)).string();
}

}  // namespace

TEST_CASE("CompensatedSum recovers tiny addends") {
  analytic::CompensatedSum s;
  s.add(1.0L);
  for (int i = 0; i < 1000000; ++i) s.add(1e-22L);
  CHECK(std::fabs(s.value() - (1.0L + 1e-16L)) < 1e-25L);
  long double naive = 1.0L;
  for (int i = 0; i < 1000000; ++i) naive += 1e-22L;
  CHECK(naive == 1.0L);
}

TEST_CASE("ratio_term examples") {
  CHECK(analytic::ratio_term(2).exact == BigRational(13, 11));
  CHECK(analytic::ratio_term(5).exact == BigRational(7813, 6773));
  CHECK(analytic::ratio_term(2).log == doctest::Approx(std::log(13.0 / 11.0)).epsilon(1e-15));
  CHECK_THROWS_AS(analytic::ratio_term(9), std::invalid_argument);
}

TEST_CASE("1 < term(p) < 1 + 1/p for every prime up to 10^5") {
  for (std::uint64_t p : oracle::eratosthenes(100000)) {
    const BigRational t = analytic::ratio_term(p).exact;
    // same comparison from the definition, independent of ratio_term's reduction
    const BigInt num = (arith::pow(big(p), 6) + 1) * (big(p) + 1);
    const BigInt den = (arith::pow(big(p), 2) + 1) * (arith::pow(big(p), 5) + 1);
    REQUIRE(t == BigRational(num, den));
    REQUIRE(num > den);
    REQUIRE(num * big(p) < den * (big(p) + 1));
  }
}

TEST_CASE("ratio_term_log matches the exact rational") {
  for (std::uint64_t p : oracle::eratosthenes(5000)) {
    const long double exact = std::log(analytic::ratio_term(p).exact.to_long_double());
    const long double fast = analytic::ratio_term_log(p);
    REQUIRE(std::fabs(fast - exact) <= 1e-17L * std::max(1.0L, std::fabs(exact)) + 1e-30L);
  }
  // far beyond double precision of the ratio itself: log term ~ 1/p
  const long double big_p = 1000000007.0L;
  CHECK(analytic::ratio_term_log(1000000007) == doctest::Approx(static_cast<double>(1.0L / big_p)).epsilon(1e-8));
}

TEST_CASE("wheel_primes matches Eratosthenes") {
  const auto ref = oracle::eratosthenes(1000000);
  for (std::uint64_t seg : {std::uint64_t{7}, std::uint64_t{1000}, std::uint64_t{4096}, analytic::kDefaultSegmentSize}) {
    for (unsigned residue : {1U, 5U}) {
      std::vector<std::uint64_t> expect;
      for (auto p : ref)
        if (p % 6 == residue) expect.push_back(p);
      CAPTURE(seg);
      CHECK(analytic::wheel_primes(1000000, residue, seg) == expect);
    }
  }
  CHECK(analytic::wheel_primes(4, 5).empty());
  CHECK(analytic::wheel_primes(5, 5) == std::vector<std::uint64_t>{5});
  CHECK_THROWS_AS(analytic::wheel_primes(100, 3), std::invalid_argument);
}

TEST_CASE("prime count of primes = 2 mod 3 below 10^6") {
  std::uint64_t expect = 0;
  for (auto p : oracle::eratosthenes(1000000))
    if (p % 3 == 2) ++expect;
  CHECK(analytic::accumulate_ratio(1000000).prime_count == expect);
}

TEST_CASE("accumulate_ratio small limits") {
  const auto one = analytic::accumulate_ratio(1);
  CHECK(one.prime_count == 0);
  CHECK(one.r_estimate() == 1.0L);
  const auto four = analytic::accumulate_ratio(4);
  CHECK(four.prime_count == 1);
  CHECK(four.r_estimate() == doctest::Approx(13.0 / 11.0).epsilon(1e-15));
  CHECK(four.limit_processed == 4);
  CHECK_THROWS_AS(analytic::accumulate_ratio(3, four), std::invalid_argument);
}

TEST_CASE("exp(log r) matches the exact product below 10^3") {
  BigRational exact(1);
  for (std::uint64_t p : oracle::eratosthenes(1000))
    if (p % 3 == 2) exact *= analytic::ratio_term(p).exact;
  const auto s = analytic::accumulate_ratio(1000);
  CHECK(std::fabs(s.r_estimate() / exact.to_long_double() - 1.0L) < 1e-12L);
}

TEST_CASE("state invariants grow monotonically") {
  RatioState s;
  long double last_log = 0, last_recip = 0;
  std::uint64_t last_count = 0;
  for (std::uint64_t lim : {10, 100, 1000, 12345, 100000, 1000000, 3000000}) {
    s = analytic::accumulate_ratio(lim, s);
    CHECK(s.log_r.value() >= last_log);
    CHECK(s.recip_sum.value() >= last_recip);
    CHECK(s.prime_count >= last_count);
    last_log = s.log_r.value();
    last_recip = s.recip_sum.value();
    last_count = s.prime_count;
  }
}

TEST_CASE("accumulation is associative over contiguous ranges") {
  for (std::uint64_t seg : {std::uint64_t{100}, std::uint64_t{1} << 12, analytic::kDefaultSegmentSize}) {
    RatioState fresh;
    fresh.segment_size = seg;
    const auto whole = analytic::accumulate_ratio(5000000, fresh);
    RatioState split = fresh;
    for (std::uint64_t cut : {2, 3, 777, 600000, 600001, 2500000, 5000000}) split = analytic::accumulate_ratio(cut, split);
    CAPTURE(seg);
    CHECK(split == whole);
  }
}

TEST_CASE("thread count does not change the bits") {
  RatioState fresh;
  fresh.segment_size = 1 << 14;
  analytic::AccumulateOptions one, four;
  one.threads = 1;
  four.threads = 4;
  CHECK(analytic::accumulate_ratio(4000000, fresh, one) == analytic::accumulate_ratio(4000000, fresh, four));
}

TEST_CASE("progress callback fires once per step") {
  std::vector<std::uint64_t> seen;
  analytic::AccumulateOptions opts;
  opts.progress_every = 1000000;
  opts.progress = [&](const RatioState& s) { seen.push_back(s.limit_processed); };
  RatioState fresh;
  fresh.segment_size = 1 << 14;
  analytic::accumulate_ratio(5000000, fresh, opts);
  CHECK(seen.size() == 5);
  CHECK(std::is_sorted(seen.begin(), seen.end()));
}

TEST_CASE("checkpoint round trip is bit-identical") {
  const auto whole = analytic::accumulate_ratio(3000000);
  const auto half = analytic::accumulate_ratio(1500000);
  const auto restored = analytic::restore_checkpoint(nlohmann::json::parse(analytic::checkpoint_json(half).dump()));
  CHECK(restored == half);
  CHECK(analytic::accumulate_ratio(3000000, restored) == whole);

  const auto path = temp_path("ckpt.json");
  analytic::save_checkpoint(half, path);
  CHECK(analytic::load_checkpoint(path) == half);
  std::filesystem::remove(path);

  const auto j = analytic::checkpoint_json(half);
  for (const char* key : {"version", "segment_size", "limit_processed", "prime_count", "log_r_hi", "log_r_lo",
                          "recip_hi", "recip_lo", "crc32"})
    CHECK(j.contains(key));
}

TEST_CASE("corrupt checkpoints are refused") {
  const auto j = analytic::checkpoint_json(analytic::accumulate_ratio(100000));
  auto tampered = j;
  tampered["prime_count"] = j["prime_count"].get<std::uint64_t>() + 1;
  CHECK_THROWS_AS(analytic::restore_checkpoint(tampered), std::runtime_error);
  auto no_crc = j;
  no_crc.erase("crc32");
  CHECK_THROWS_AS(analytic::restore_checkpoint(no_crc), std::runtime_error);

  const auto path = temp_path("bad.json");
  {
    std::ofstream out(path);
    out << "{\"version\": 1, \"trunc";
  }
  CHECK_THROWS_AS(analytic::load_checkpoint(path), std::runtime_error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(analytic::load_checkpoint(temp_path("missing.json")), std::runtime_error);
}

TEST_CASE("reciprocal_model_gap") {
  CHECK(std::isfinite(static_cast<double>(analytic::reciprocal_model_gap(analytic::accumulate_ratio(100)))));
  CHECK_THROWS_AS(analytic::reciprocal_model_gap(analytic::accumulate_ratio(99)), std::invalid_argument);
  const auto a = analytic::reciprocal_model_gap(analytic::accumulate_ratio(1000000));
  const auto b = analytic::reciprocal_model_gap(analytic::accumulate_ratio(30000000));
  CHECK(std::fabs(a - b) < 0.01L);
}

TEST_CASE("zeta") {
  CHECK(std::fabs(analytic::zeta(2).value - kPi * kPi / 6) < 1e-13L);
  CHECK(std::fabs(analytic::zeta(4).value - std::pow(kPi, 4) / 90) < 1e-13L);
  CHECK(std::fabs(analytic::zeta(10).value - std::pow(kPi, 10) / 93555) < 1e-13L);
  CHECK(std::fabs(analytic::zeta(5).value - 1.0369277551433699263L) < 1e-15L);
  CHECK(std::fabs(analytic::zeta(3).value - 1.2020569031595942854L) < 1e-15L);
  CHECK_THROWS_AS(analytic::zeta(1), std::invalid_argument);
  long double prev = analytic::zeta(2).value;
  for (unsigned s = 3; s <= 40; ++s) {
    const long double v = analytic::zeta(s).value;
    CHECK(v > 1.0L);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("euler_product_check") {
  CHECK(analytic::euler_product_check(2, 2).partial == doctest::Approx(1.25).epsilon(1e-18));
  CHECK(analytic::euler_product_check(2, 1000).target == doctest::Approx(static_cast<double>(15 / (kPi * kPi))));
  CHECK(std::fabs(analytic::euler_product_check(5, 1000000).gap) < 1e-12L);
  const auto a = analytic::euler_product_check(2, 1000), b = analytic::euler_product_check(2, 100000);
  CHECK(b.gap < a.gap);
  CHECK(b.gap > 0);
}

TEST_CASE("crossing_extrapolation") {
  const auto s = analytic::accumulate_ratio(1000000);
  const auto self = analytic::crossing_extrapolation(s, s.r_estimate());
  CHECK(self.log10_bound == doctest::Approx(6.0).epsilon(1e-9));
  const auto deg = analytic::crossing_extrapolation(s, 1.0L);
  CHECK(deg.degenerate);
  CHECK(deg.log10_bound == 0);
  const auto far = analytic::crossing_extrapolation(s, 21.0L);
  CHECK_FALSE(far.degenerate);
  CHECK(far.log10_bound > 100);
  CHECK(far.log10_bound < 1000);
}
