#pragma once

// Finite-n sampling of permutation cycle types and random-mapping component
// sizes, with replicate estimation split into fixed chunks so results do not
// depend on the number of worker threads.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace cyclemetrics {

/// Reproducible random stream. Identical (seed, stream_id) pairs yield
/// identical draws on every platform.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next();
  /// Uniform on {0, ..., bound - 1}, bound >= 1.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [0, 1).
  double uniform();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

/// Cycle lengths (or component sizes) of one sample, largest first.
class CycleType {
 public:
  CycleType() = default;
  explicit CycleType(std::vector<long> lengths);

  long n() const { return n_; }
  std::size_t count() const { return desc_.size(); }
  const std::vector<long>& lengths() const { return desc_; }

  /// r-th longest, r >= 1; 0 when there are fewer than r cycles.
  long largest(int r) const;
  /// r-th shortest, r >= 1; 0 when there are fewer than r cycles.
  long smallest(int r) const;
  /// Number of cycles of length ell.
  long cycles_of_length(long ell) const;

 private:
  std::vector<long> desc_;
  long n_ = 0;
};

/// Cycle type of a uniform random permutation of n elements. The cycle through
/// the smallest remaining element has length uniform on {1..remaining}.
CycleType sample_cycle_type(long n, RngStream& rng);

/// Component sizes of the functional graph of a uniform random map [n] -> [n].
CycleType sample_mapping_components(long n, RngStream& rng);

struct EstimateWithCI {
  double mean = 0.0;
  double std_err = 0.0;
  long reps = 0;
  std::uint64_t seed = 0;
  long n = 0;
};

enum class SampleModel { permutation, mapping };

struct SimConfig {
  long n = 100000;
  long reps = 100000;
  std::uint64_t seed = 1;
  int threads = 1;
  SampleModel model = SampleModel::permutation;
};

/// Replicates per RNG stream; chunk c uses stream id c.
inline constexpr long kChunkSize = 8192;

using Statistic = std::function<double(const CycleType&)>;

/// Means and standard errors of several statistics over the same samples.
std::vector<EstimateWithCI> estimate_statistics(const SimConfig& config,
                                                const std::vector<Statistic>& stats);

using Event = std::function<bool(const CycleType&)>;

EstimateWithCI estimate_event(const Event& event, const SimConfig& config);

/// Mean of (L_r / n)(L_s / n).
EstimateWithCI estimate_product_moment(int r, int s, const SimConfig& config);

/// Conjunction of comparisons parsed from text such as "L3<=1/4,L2>1/4".
/// Terms: L<r> and S<r> compare (r-th longest / shortest) / n against the
/// right-hand side; C<l> compares the count of l-cycles against it.
/// Operators: <=, <, >=, >, ==. Numbers may be written as p/q.
struct EventExpr {
  struct Term {
    char stat;  // 'L', 'S' or 'C'
    long index;
    std::string op;
    double rhs;
  };
  std::string text;
  std::vector<Term> terms;

  bool operator()(const CycleType& c) const;
};

EventExpr parse_event(const std::string& text);

/// Parses a decimal or an exact fraction "p/q".
double parse_number(const std::string& text);

}  // namespace cyclemetrics
