#include "glhs/estimators.hpp"

#include "glhs/error.hpp"
#include "glhs/simd/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

namespace glhs {

McEstimate mc_failure_probability(const BatchFunction& g, std::size_t m_c,
                                  const UniformStream& stream, int threads) {
  if (m_c == 0) throw Error("mc_failure_probability: need at least one sample");
  const std::size_t chunk = stream.chunk_size();
  const std::size_t chunks = (m_c + chunk - 1) / chunk;
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> failures{0};
  const simd::KernelSet& k = simd::active_kernels();

  auto worker = [&] {
    std::vector<double> v;
    for (std::size_t c = next++; c < chunks; c = next++) {
      const std::size_t count = std::min(chunk, m_c - c * chunk);
      const Points x = stream.chunk(c, count);
      v.resize(count);
      g(x, v);
      failures += k.count_nonpositive(v.data(), count);
    }
  };
  const auto workers = static_cast<std::size_t>(std::max(1, threads));
  if (workers == 1 || chunks == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(workers, chunks); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  McEstimate out;
  out.failures = failures.load();
  out.samples = m_c;
  out.pf = static_cast<double>(out.failures) / static_cast<double>(m_c);
  return out;
}

NonIterativeEstimate non_iterative_pf(const BatchFunction& surrogate, const LimitState& g,
                                      double eta, const UniformStream& stream, std::size_t samples,
                                      std::optional<std::size_t> budget) {
  if (!(eta > 0.0)) throw Error("non_iterative_pf: threshold must be positive");
  if (samples == 0) throw Error("non_iterative_pf: need at least one sample");
  if (budget && *budget == 0) throw Error("non_iterative_pf: budget must be positive");

  NonIterativeEstimate out;
  const std::size_t chunk = stream.chunk_size();
  std::vector<double> v;
  std::vector<Eigen::Index> buffer;
  bool done = false;
  for (std::size_t c = 0; !done && out.samples < samples; ++c) {
    const std::size_t count = std::min(chunk, samples - out.samples);
    const Points x = stream.chunk(c, count);
    v.resize(count);
    surrogate(x, v);
    buffer.clear();
    std::size_t consumed = 0;
    for (std::size_t i = 0; i < count; ++i) {
      ++consumed;
      const double s = v[i];
      if (s < -eta) {
        ++out.failures;
      } else if (std::fabs(s) <= eta) {
        buffer.push_back(static_cast<Eigen::Index>(i));
        if (budget && out.evaluations + buffer.size() == *budget) {
          done = true;
          break;
        }
      }
    }
    out.samples += consumed;
    if (!buffer.empty()) {
      Points bx(static_cast<Eigen::Index>(buffer.size()), x.cols());
      for (std::size_t j = 0; j < buffer.size(); ++j) bx.row(static_cast<Eigen::Index>(j)) = x.row(buffer[j]);
      const Vector y = g.evaluate(bx);
      out.evaluations += buffer.size();
      for (Eigen::Index j = 0; j < y.size(); ++j) {
        if (y[j] <= 0.0) ++out.failures;
      }
    }
  }
  if (budget && out.evaluations < *budget) {
    std::ostringstream msg;
    msg << "non_iterative_pf: only " << out.evaluations << " of " << *budget
        << " buffer points within " << samples << " draws";
    throw Starvation(msg.str());
  }
  out.pf = static_cast<double>(out.failures) / static_cast<double>(out.samples);
  return out;
}

IterativeLiEstimate iterative_li_pf(const BatchFunction& surrogate, const LimitState& g,
                                    const Points& samples, std::size_t group_size,
                                    double tolerance, std::size_t max_groups) {
  if (group_size == 0) throw Error("iterative_li_pf: group size must be at least 1");
  const auto m = static_cast<std::size_t>(samples.rows());
  if (m == 0) throw Error("iterative_li_pf: no samples");
  std::vector<double> v(m);
  surrogate(samples, v);

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::fabs(v[a]) < std::fabs(v[b]); });
  std::vector<char> failed(m);
  std::size_t count = 0;
  for (std::size_t i = 0; i < m; ++i) {
    failed[i] = v[i] <= 0.0;
    count += static_cast<std::size_t>(failed[i]);
  }

  IterativeLiEstimate out;
  const double md = static_cast<double>(m);
  double estimate = static_cast<double>(count) / md;
  for (std::size_t start = 0; start < m; start += group_size) {
    if (max_groups != 0 && out.groups == max_groups) break;
    const std::size_t end = std::min(m, start + group_size);
    Points gx(static_cast<Eigen::Index>(end - start), samples.cols());
    for (std::size_t j = start; j < end; ++j) {
      gx.row(static_cast<Eigen::Index>(j - start)) = samples.row(static_cast<Eigen::Index>(order[j]));
    }
    const Vector y = g.evaluate(gx);
    out.evaluations += end - start;
    ++out.groups;
    for (std::size_t j = start; j < end; ++j) {
      const std::size_t i = order[j];
      const char now = y[static_cast<Eigen::Index>(j - start)] <= 0.0;
      if (now != failed[i]) {
        if (now) ++count; else --count;
        failed[i] = now;
      }
    }
    const double updated = static_cast<double>(count) / md;
    out.history.push_back(updated);
    const double change = std::fabs(updated - estimate);
    estimate = updated;
    if (change < tolerance) {
      out.converged = true;
      break;
    }
  }
  out.pf = estimate;
  return out;
}

double empirical_quantile_threshold(std::vector<double> values, double c_lim) {
  if (values.empty()) throw Error("empirical_quantile_threshold: no values");
  if (!(c_lim > 0.0 && c_lim < 1.0)) throw Error("empirical_quantile_threshold: c_lim must lie in (0, 1)");
  const std::size_t n = values.size();
  auto rank = static_cast<std::size_t>(std::ceil(c_lim * static_cast<double>(n)));
  rank = std::clamp<std::size_t>(rank, 1, n);
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1), values.end());
  return values[rank - 1];
}

LimitState quantile_limit_state(std::string name, int dim, BatchFunction quantity,
                                double threshold) {
  return LimitState(std::move(name), dim,
                    [q = std::move(quantity), threshold](const Points& x, std::span<double> out) {
                      q(x, out);
                      for (double& v : out) v = threshold - v;
                    });
}

RepetitionStats summarize(const std::vector<double>& values) {
  RepetitionStats s;
  s.runs = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    // Shifted by the first value so identical runs give exactly zero.
    const double shift = values.front();
    double sum_d = 0.0;
    double sum_sq = 0.0;
    for (double v : values) {
      sum_d += v - shift;
      sum_sq += (v - shift) * (v - shift);
    }
    const double n = static_cast<double>(values.size());
    s.stddev = std::sqrt(std::max(0.0, (sum_sq - sum_d * sum_d / n) / (n - 1.0)));
  }
  return s;
}

}  // namespace glhs
