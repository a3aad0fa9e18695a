#include "codsum/analytic.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <stdexcept>
#include <thread>

namespace codsum::analytic {

namespace {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint32_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// Primes in (after, upto] that lie in [lo, lo + 6*slots) and are = residue (mod 6).
// Slot i stands for lo + 6i + residue; lo is a multiple of 6.
std::vector<std::uint64_t> sieve_segment(std::uint64_t lo, std::uint64_t slots, unsigned residue,
                                         const std::vector<std::uint32_t>& base, std::uint64_t after,
                                         std::uint64_t upto) {
  std::vector<std::uint8_t> composite(slots, 0);
  const std::uint64_t hi = lo + 6 * slots;
  for (std::uint32_t q : base) {
    if (q < 5) continue;
    const std::uint64_t qq = std::uint64_t{q} * q;
    if (qq >= hi) break;
    const std::uint64_t start = std::max(qq, lo);
    std::uint64_t m = (start + q - 1) / q;
    // q^-1 = q (mod 6), so q*m = residue needs m = residue*q (mod 6).
    const std::uint64_t want = (residue * q) % 6;
    m += (want + 6 - m % 6) % 6;
    for (std::uint64_t slot = (q * m - lo - residue) / 6; slot < slots; slot += q) composite[slot] = 1;
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < slots; ++i) {
    if (composite[i]) continue;
    const std::uint64_t v = lo + 6 * i + residue;
    if (v > upto) break;
    if (v <= after || v < 5) continue;
    out.push_back(v);
  }
  return out;
}

struct SegmentValues {
  std::vector<long double> logs;
  std::vector<long double> recips;
};

std::string hex(long double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%La", v);
  return buf;
}

long double unhex(const nlohmann::json& j) {
  const std::string s = j.get<std::string>();
  char* end = nullptr;
  long double v = std::strtold(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::runtime_error("checkpoint: malformed float " + s);
  return v;
}

std::uint32_t crc_of(const nlohmann::json& payload) {
  const std::string text = payload.dump();
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(text.data()), static_cast<uInt>(text.size())));
}

}  // namespace

void CompensatedSum::add(long double x) {
  const long double t = hi + x;
  if (std::fabs(hi) >= std::fabs(x))
    lo += (hi - t) + x;
  else
    lo += (x - t) + hi;
  hi = t;
}

long double RatioState::r_estimate() const { return std::exp(log_r.value()); }

long double ratio_term_log(std::uint64_t p) {
  // term - 1 = u(1-u)(1-u^4) / ((1+u^2)(1+u^5)) with u = 1/p, free of cancellation.
  const long double u = 1.0L / static_cast<long double>(p);
  const long double u2 = u * u, u4 = u2 * u2, u5 = u4 * u;
  return std::log1p(u * (1.0L - u) * (1.0L - u4) / ((1.0L + u2) * (1.0L + u5)));
}

RatioTerm ratio_term(std::uint64_t p) {
  if (!arith::is_prime(p)) throw std::invalid_argument("ratio_term: " + std::to_string(p) + " is not prime");
  const arith::BigInt bp(static_cast<unsigned long>(p));
  const arith::BigInt num = (arith::pow(bp, 6) + 1) * (bp + 1);
  const arith::BigInt den = (arith::pow(bp, 2) + 1) * (arith::pow(bp, 5) + 1);
  return {arith::BigRational(num, den), ratio_term_log(p)};
}

std::vector<std::uint64_t> wheel_primes(std::uint64_t limit, unsigned residue, std::uint64_t segment_size) {
  if (residue != 1 && residue != 5) throw std::invalid_argument("wheel_primes: residue must be 1 or 5");
  std::vector<std::uint64_t> out;
  if (limit < 5) return out;
  const auto base = small_primes(isqrt(limit));
  const std::uint64_t span = 6 * segment_size;
  for (std::uint64_t lo = 0; lo <= limit; lo += span) {
    auto seg = sieve_segment(lo, segment_size, residue, base, 0, limit);
    out.insert(out.end(), seg.begin(), seg.end());
  }
  return out;
}

RatioState accumulate_ratio(std::uint64_t limit, RatioState state, const AccumulateOptions& options) {
  if (limit < state.limit_processed)
    throw std::invalid_argument("accumulate_ratio: limit is below the state's processed limit");
  if (state.segment_size == 0) throw std::invalid_argument("accumulate_ratio: segment size must be positive");

  std::uint64_t reported = state.limit_processed / std::max<std::uint64_t>(options.progress_every, 1);
  auto advance = [&](std::uint64_t processed) {
    state.limit_processed = processed;
    if (!options.progress || options.progress_every == 0) return;
    const std::uint64_t step = processed / options.progress_every;
    if (step > reported) {
      reported = step;
      options.progress(state);
    }
  };

  if (state.limit_processed < 2 && limit >= 2) {
    state.log_r.add(ratio_term_log(2));
    state.recip_sum.add(0.5L);
    ++state.prime_count;
  }
  if (limit < 5) {
    advance(limit);
    return state;
  }

  const auto base = small_primes(isqrt(limit));
  const std::uint64_t slots = state.segment_size;
  const std::uint64_t span = 6 * slots;
  const std::uint64_t after = std::max<std::uint64_t>(state.limit_processed, 2);
  const std::uint64_t first = (after + 1) / span, last = limit / span;
  unsigned threads = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());

  auto work = [&](std::uint64_t seg) {
    SegmentValues vals;
    for (std::uint64_t p : sieve_segment(seg * span, slots, 5, base, after, limit)) {
      vals.logs.push_back(ratio_term_log(p));
      vals.recips.push_back(1.0L / static_cast<long double>(p));
    }
    return vals;
  };

  for (std::uint64_t batch = first; batch <= last; batch += threads) {
    const std::uint64_t batch_end = std::min<std::uint64_t>(last + 1, batch + threads);
    std::vector<std::future<SegmentValues>> futures;
    for (std::uint64_t seg = batch; seg < batch_end; ++seg)
      futures.push_back(std::async(threads > 1 ? std::launch::async : std::launch::deferred, work, seg));
    for (std::uint64_t seg = batch; seg < batch_end; ++seg) {
      const SegmentValues vals = futures[seg - batch].get();
      for (std::size_t i = 0; i < vals.logs.size(); ++i) {
        state.log_r.add(vals.logs[i]);
        state.recip_sum.add(vals.recips[i]);
      }
      state.prime_count += vals.logs.size();
      advance(std::min(limit, (seg + 1) * span - 1));
    }
  }
  state.limit_processed = limit;
  return state;
}

long double reciprocal_model_gap(const RatioState& state) {
  if (state.limit_processed < 100) throw std::invalid_argument("reciprocal_model_gap: limit must be >= 100");
  return state.recip_sum.value() - 0.5L * std::log(std::log(static_cast<long double>(state.limit_processed)));
}

ZetaValue zeta(unsigned s) {
  if (s < 2) throw std::invalid_argument("zeta: s must be >= 2");
  constexpr unsigned kTerms = 100;
  const long double ls = s;
  CompensatedSum sum;
  for (unsigned n = kTerms - 1; n >= 1; --n) sum.add(std::pow(static_cast<long double>(n), -ls));
  const long double nn = kTerms;
  sum.add(std::pow(nn, 1.0L - ls) / (ls - 1.0L));
  sum.add(0.5L * std::pow(nn, -ls));
  // B_2k / (2k)! for k = 1..4
  constexpr long double kCoef[] = {1.0L / 12.0L, -1.0L / 720.0L, 1.0L / 30240.0L, -1.0L / 1209600.0L};
  long double rising = ls;  // s (s+1) ... (s+2k-2)
  for (unsigned k = 1; k <= 4; ++k) {
    sum.add(kCoef[k - 1] * rising * std::pow(nn, -ls - 2.0L * k + 1.0L));
    rising *= (ls + 2.0L * k - 1.0L) * (ls + 2.0L * k);
  }
  return {s, sum.value()};
}

EulerProduct euler_product_check(unsigned s, std::uint64_t limit) {
  if (s < 2 || limit < 2) throw std::invalid_argument("euler_product_check: need s >= 2 and limit >= 2");
  std::vector<std::uint64_t> primes{2};
  if (limit >= 3) primes.push_back(3);
  for (unsigned residue : {1U, 5U}) {
    auto more = wheel_primes(limit, residue);
    primes.insert(primes.end(), more.begin(), more.end());
  }
  std::sort(primes.begin(), primes.end());
  CompensatedSum log_sum;
  for (std::uint64_t p : primes) log_sum.add(std::log1p(std::pow(static_cast<long double>(p), -static_cast<long double>(s))));
  EulerProduct out;
  out.partial = std::exp(log_sum.value());
  out.target = zeta(s).value / zeta(2 * s).value;
  out.gap = out.target - out.partial;
  return out;
}

Extrapolation crossing_extrapolation(const RatioState& state, long double target) {
  if (state.limit_processed < 3) throw std::invalid_argument("crossing_extrapolation: state has no range");
  Extrapolation ex;
  const long double loglog = std::log(std::log(static_cast<long double>(state.limit_processed)));
  ex.fitted_constant = state.log_r.value() - 0.5L * loglog;
  if (target <= 1.0L) {
    ex.degenerate = true;
    return ex;
  }
  const long double want_loglog = 2.0L * (std::log(target) - ex.fitted_constant);
  ex.log10_bound = std::exp(want_loglog) / std::log(10.0L);
  return ex;
}

nlohmann::json checkpoint_json(const RatioState& state) {
  nlohmann::json payload = {{"version", state.version},
                            {"segment_size", state.segment_size},
                            {"limit_processed", state.limit_processed},
                            {"prime_count", state.prime_count},
                            {"log_r_hi", hex(state.log_r.hi)},
                            {"log_r_lo", hex(state.log_r.lo)},
                            {"recip_hi", hex(state.recip_sum.hi)},
                            {"recip_lo", hex(state.recip_sum.lo)}};
  payload["crc32"] = crc_of(payload);
  return payload;
}

RatioState restore_checkpoint(const nlohmann::json& j) {
  nlohmann::json payload = j;
  if (!payload.contains("crc32")) throw std::runtime_error("checkpoint: missing crc32");
  const auto stored = payload.at("crc32").get<std::uint32_t>();
  payload.erase("crc32");
  if (crc_of(payload) != stored) throw std::runtime_error("checkpoint: CRC mismatch, refusing to resume");
  RatioState s;
  s.version = payload.at("version").get<int>();
  if (s.version != kCheckpointVersion) throw std::runtime_error("checkpoint: unsupported version");
  s.segment_size = payload.at("segment_size").get<std::uint64_t>();
  s.limit_processed = payload.at("limit_processed").get<std::uint64_t>();
  s.prime_count = payload.at("prime_count").get<std::uint64_t>();
  s.log_r = {unhex(payload.at("log_r_hi")), unhex(payload.at("log_r_lo"))};
  s.recip_sum = {unhex(payload.at("recip_hi")), unhex(payload.at("recip_lo"))};
  return s;
}

void save_checkpoint(const RatioState& state, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot write " + tmp);
    out << checkpoint_json(state).dump() << '\n';
    if (!out) throw std::runtime_error("checkpoint: write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw std::runtime_error("checkpoint: cannot rename to " + path);
}

RatioState load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("checkpoint: cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("checkpoint: corrupt file: ") + e.what());
  }
  return restore_checkpoint(j);
}

}  // namespace codsum::analytic
