#include "cyclemetrics/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>
#include <stdexcept>

#include "cyclemetrics/errors.hpp"
#include "cyclemetrics/parallel.hpp"

namespace cyclemetrics {

namespace {

std::seed_seq make_seed_seq(std::uint64_t seed, std::uint64_t stream_id) {
  return std::seed_seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                       static_cast<std::uint32_t>(stream_id),
                       static_cast<std::uint32_t>(stream_id >> 32)};
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  auto seq = make_seed_seq(seed, stream_id);
  return std::mt19937_64(seq);
}

// Running mean and sum of squared deviations.
struct Moments {
  double count = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    count += 1.0;
    const double d = x - mean;
    mean += d / count;
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0.0) return;
    const double total = count + o.count;
    const double d = o.mean - mean;
    mean += d * o.count / total;
    m2 += o.m2 + d * d * count * o.count / total;
    count = total;
  }
};

long find_root(std::vector<long>& parent, long i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

std::uint64_t RngStream::next() { return engine_(); }

std::uint64_t RngStream::below(std::uint64_t bound) {
  // Lemire's multiply-and-reject; exact and platform independent
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RngStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

CycleType::CycleType(std::vector<long> lengths) : desc_(std::move(lengths)) {
  std::sort(desc_.begin(), desc_.end(), std::greater<>());
  n_ = std::accumulate(desc_.begin(), desc_.end(), 0L);
}

long CycleType::largest(int r) const {
  if (r < 1) throw DomainError("largest: r must be >= 1");
  return static_cast<std::size_t>(r) <= desc_.size() ? desc_[r - 1] : 0;
}

long CycleType::smallest(int r) const {
  if (r < 1) throw DomainError("smallest: r must be >= 1");
  return static_cast<std::size_t>(r) <= desc_.size() ? desc_[desc_.size() - r] : 0;
}

long CycleType::cycles_of_length(long ell) const {
  return std::count(desc_.begin(), desc_.end(), ell);
}

CycleType sample_cycle_type(long n, RngStream& rng) {
  if (n < 1) throw DomainError("sample_cycle_type: n must be >= 1");
  std::vector<long> lengths;
  long remaining = n;
  while (remaining > 0) {
    const long len = 1 + static_cast<long>(rng.below(static_cast<std::uint64_t>(remaining)));
    lengths.push_back(len);
    remaining -= len;
  }
  return CycleType(std::move(lengths));
}

CycleType sample_mapping_components(long n, RngStream& rng) {
  if (n < 1) throw DomainError("sample_mapping_components: n must be >= 1");
  std::vector<long> parent(n);
  std::vector<long> size(n, 1);
  std::iota(parent.begin(), parent.end(), 0L);
  for (long i = 0; i < n; ++i) {
    const long j = static_cast<long>(rng.below(static_cast<std::uint64_t>(n)));
    long a = find_root(parent, i);
    long b = find_root(parent, j);
    if (a == b) continue;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
  std::vector<long> lengths;
  for (long i = 0; i < n; ++i) {
    if (parent[i] == i) lengths.push_back(size[i]);
  }
  return CycleType(std::move(lengths));
}

std::vector<EstimateWithCI> estimate_statistics(const SimConfig& config,
                                                const std::vector<Statistic>& stats) {
  if (config.n < 1) throw DomainError("simulation: n must be >= 1");
  if (config.reps < 1) throw DomainError("simulation: reps must be >= 1");
  const long chunks = (config.reps + kChunkSize - 1) / kChunkSize;
  std::vector<std::vector<Moments>> partial(chunks, std::vector<Moments>(stats.size()));

  parallel_for(static_cast<std::size_t>(chunks), config.threads, [&](std::size_t c) {
    RngStream rng(config.seed, c);
    const long begin = static_cast<long>(c) * kChunkSize;
    const long end = std::min(config.reps, begin + kChunkSize);
    auto& acc = partial[c];
    for (long rep = begin; rep < end; ++rep) {
      const CycleType sample = config.model == SampleModel::permutation
                                   ? sample_cycle_type(config.n, rng)
                                   : sample_mapping_components(config.n, rng);
      for (std::size_t k = 0; k < stats.size(); ++k) acc[k].add(stats[k](sample));
    }
  });

  std::vector<EstimateWithCI> out;
  for (std::size_t k = 0; k < stats.size(); ++k) {
    Moments total;
    for (const auto& chunk : partial) total.merge(chunk[k]);
    const double var = total.count > 1.0 ? total.m2 / (total.count - 1.0) : 0.0;
    out.push_back({total.mean, std::sqrt(var / total.count), config.reps, config.seed, config.n});
  }
  return out;
}

EstimateWithCI estimate_event(const Event& event, const SimConfig& config) {
  return estimate_statistics(config, {[&](const CycleType& c) { return event(c) ? 1.0 : 0.0; }})
      .front();
}

EstimateWithCI estimate_product_moment(int r, int s, const SimConfig& config) {
  if (r < 1 || s < 1) throw DomainError("estimate_product_moment: ranks must be >= 1");
  const double n = static_cast<double>(config.n);
  return estimate_statistics(config,
                             {[=](const CycleType& c) {
                               return (c.largest(r) / n) * (c.largest(s) / n);
                             }})
      .front();
}

double parse_number(const std::string& text) {
  const auto slash = text.find('/');
  std::size_t used = 0;
  try {
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    std::size_t u1 = 0;
    std::size_t u2 = 0;
    const double p = std::stod(num, &u1);
    const double q = std::stod(den, &u2);
    if (u1 != num.size() || u2 != den.size() || q == 0.0) throw std::invalid_argument(text);
    return p / q;
  } catch (const std::logic_error&) {
    throw DomainError("not a number: '" + text + "'");
  }
}

EventExpr parse_event(const std::string& text) {
  static const std::regex term_re(R"(\s*([LSC])(\d+)\s*(<=|>=|==|<|>)\s*([^,\s]+)\s*)");
  EventExpr expr{text, {}};
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string part =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::smatch m;
    if (!std::regex_match(part, m, term_re)) {
      throw DomainError("bad event term '" + part + "' (expected e.g. L2<=1/3)");
    }
    const long index = std::stol(m[2]);
    if (index < 1) throw DomainError("event index must be >= 1 in '" + part + "'");
    expr.terms.push_back({m[1].str()[0], index, m[3], parse_number(m[4])});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return expr;
}

bool EventExpr::operator()(const CycleType& c) const {
  const double n = static_cast<double>(c.n());
  for (const auto& t : terms) {
    double lhs;
    double rhs = t.rhs;
    switch (t.stat) {
      case 'L': lhs = static_cast<double>(c.largest(static_cast<int>(t.index))); rhs *= n; break;
      case 'S': lhs = static_cast<double>(c.smallest(static_cast<int>(t.index))); rhs *= n; break;
      default: lhs = static_cast<double>(c.cycles_of_length(t.index)); break;
    }
    bool ok;
    if (t.op == "<=") ok = lhs <= rhs;
    else if (t.op == "<") ok = lhs < rhs;
    else if (t.op == ">=") ok = lhs >= rhs;
    else if (t.op == ">") ok = lhs > rhs;
    else ok = lhs == rhs;
    if (!ok) return false;
  }
  return true;
}

}  // namespace cyclemetrics
