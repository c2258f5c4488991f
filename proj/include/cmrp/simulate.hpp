#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cmrp/model.hpp"

namespace cmrp {

/// One realization up to a fixed horizon. Arrivals are the jump times that
/// fall inside [0, horizon]; the generation loop always observed one arrival
/// beyond the horizon before stopping, so the path is complete on [0, horizon].
struct Path {
  Theta theta;
  std::vector<double> arrivals;       // T_1 < T_2 < ... <= horizon
  std::vector<double> interarrivals;  // W_n = T_n - T_{n-1}
  std::vector<double> claims;         // X_n > 0
  double horizon = 0.0;

  std::size_t jumps() const { return arrivals.size(); }
};

inline constexpr std::uint64_t kDefaultMaxJumps = 10'000'000;

/// Canonical construction: theta from the mixing law, then i.i.d.
/// interarrivals from the kernel at theta and i.i.d. claims.
/// Throws ExplosionGuard after max_jumps arrivals before the horizon; a
/// correctly specified kernel cannot reach that.
Path sample_path(const CmrpModel& model, double t_max, RngStream& rng,
                 std::uint64_t max_jumps = kDefaultMaxJumps);

/// Same construction with the mixing draw replaced by a fixed theta
/// (the conditional renewal process).
Path sample_path_given_theta(const CmrpModel& model, const Theta& theta, double t_max,
                             RngStream& rng, std::uint64_t max_jumps = kDefaultMaxJumps);

/// N_t: number of arrivals in [0, t]; right-continuous in t.
int count_at(const Path& p, double t);
/// S_t: aggregate claims up to and including time t.
double aggregate_at(const Path& p, double t);
/// u + c(theta) t - S_t.
double reserve_at(const Path& p, const CmrpModel& model, double u, double t);
/// First jump time at which the reserve is negative, if any within the
/// horizon. Between jumps the reserve only grows, so jump times suffice.
std::optional<double> ruin_time(const Path& p, const CmrpModel& model, double u);

/// Runs fn(chunk_begin, chunk_end) across `workers` threads over [0, n).
/// Chunks are contiguous, so any per-index output is schedule-independent.
void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t, std::size_t)>& fn);

unsigned default_workers();

/// Generates path i from stream (seed, i) and hands it to fn(i, path).
/// fn must be safe to call concurrently for distinct i.
template <class F>
void for_each_path(const CmrpModel& model, std::size_t n_paths, double horizon,
                   std::uint64_t seed, unsigned workers, F&& fn) {
  parallel_for(n_paths, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RngStream rng(seed, i);
      Path p = sample_path(model, horizon, rng);
      fn(i, p);
    }
  });
}

template <class F>
void for_each_path_given_theta(const CmrpModel& model, const Theta& theta,
                               std::size_t n_paths, double horizon, std::uint64_t seed,
                               unsigned workers, F&& fn) {
  parallel_for(n_paths, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      RngStream rng(seed, i);
      Path p = sample_path_given_theta(model, theta, horizon, rng);
      fn(i, p);
    }
  });
}

/// Ordered by path index; identical output for any worker count.
std::vector<Path> simulate_paths(const CmrpModel& model, std::size_t n_paths, double horizon,
                                 std::uint64_t seed, unsigned workers);

/// CSV columns: path_id, theta[, theta2], n, T_n, W_n, X_n — one row per jump,
/// and a single row with n=0 and empty time fields for a path with no jumps.
void write_paths_csv(std::ostream& os, const std::vector<Path>& paths);
std::vector<Path> read_paths_csv(std::istream& is, double horizon);

}  // namespace cmrp
