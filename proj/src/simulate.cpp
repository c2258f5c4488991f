#include "cmrp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "cmrp/errors.hpp"
#include "csv_util.hpp"

namespace cmrp {

namespace {

Path generate(const CmrpModel& model, const Theta& theta, double t_max, RngStream& rng,
              std::uint64_t max_jumps) {
  Path p;
  p.theta = theta;
  p.horizon = t_max;
  const DistSpec kernel = model.interarrival_at(theta);
  double t = 0.0;
  for (;;) {
    const double w = sample(kernel, rng);
    if (t + w > t_max) break;  // first arrival beyond the horizon is not stored
    t += w;
    p.interarrivals.push_back(w);
    p.arrivals.push_back(t);
    p.claims.push_back(sample(model.claims, rng));
    if (p.arrivals.size() >= max_jumps) {
      throw ExplosionGuard("path exceeded " + std::to_string(max_jumps) +
                           " arrivals before t=" + std::to_string(t_max) +
                           " at theta=" + to_string(theta) +
                           "; the interarrival kernel looks mis-specified");
    }
  }
  return p;
}

void check_time(const Path& p, double t) {
  if (t < 0.0 || t > p.horizon) {
    throw DomainError("t=" + std::to_string(t) + " outside the simulated horizon [0, " +
                      std::to_string(p.horizon) + "]");
  }
}

}  // namespace

Path sample_path(const CmrpModel& model, double t_max, RngStream& rng,
                 std::uint64_t max_jumps) {
  const Theta theta = model.mixing.sample(rng);
  return generate(model, theta, t_max, rng, max_jumps);
}

Path sample_path_given_theta(const CmrpModel& model, const Theta& theta, double t_max,
                             RngStream& rng, std::uint64_t max_jumps) {
  return generate(model, theta, t_max, rng, max_jumps);
}

int count_at(const Path& p, double t) {
  check_time(p, t);
  auto it = std::upper_bound(p.arrivals.begin(), p.arrivals.end(), t);
  return static_cast<int>(it - p.arrivals.begin());
}

double aggregate_at(const Path& p, double t) {
  const int n = count_at(p, t);
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += p.claims[static_cast<std::size_t>(k)];
  return s;
}

double reserve_at(const Path& p, const CmrpModel& model, double u, double t) {
  return u + model.premium_rate(p.theta) * t - aggregate_at(p, t);
}

std::optional<double> ruin_time(const Path& p, const CmrpModel& model, double u) {
  const double c = model.premium_rate(p.theta);
  double s = 0.0;
  for (std::size_t n = 0; n < p.arrivals.size(); ++n) {
    s += p.claims[n];
    if (u + c * p.arrivals[n] - s < 0.0) return p.arrivals[n];
  }
  return std::nullopt;
}

unsigned default_workers() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, unsigned workers,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (workers == 0) workers = default_workers();
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  if (workers <= 1 || n < 2) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<Path> simulate_paths(const CmrpModel& model, std::size_t n_paths, double horizon,
                                 std::uint64_t seed, unsigned workers) {
  std::vector<Path> paths(n_paths);
  for_each_path(model, n_paths, horizon, seed, workers,
                [&](std::size_t i, const Path& p) { paths[i] = p; });
  return paths;
}

void write_paths_csv(std::ostream& os, const std::vector<Path>& paths) {
  const bool two_dim = !paths.empty() && paths.front().theta.dim == 2;
  os << (two_dim ? "path_id,theta,theta2,n,T_n,W_n,X_n\n" : "path_id,theta,n,T_n,W_n,X_n\n");
  for (std::size_t id = 0; id < paths.size(); ++id) {
    const Path& p = paths[id];
    std::string prefix = std::to_string(id) + "," + g12(p.theta.x1);
    if (two_dim) prefix += "," + g12(p.theta.x2);
    if (p.jumps() == 0) {
      os << prefix << ",0,,,\n";
      continue;
    }
    for (std::size_t n = 0; n < p.jumps(); ++n) {
      os << prefix << "," << (n + 1) << "," << g12(p.arrivals[n]) << ","
         << g12(p.interarrivals[n]) << "," << g12(p.claims[n]) << "\n";
    }
  }
}

std::vector<Path> read_paths_csv(std::istream& is, double horizon) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("paths csv: missing header");
  const bool two_dim = line.find("theta2") != std::string::npos;
  std::vector<Path> paths;
  long current_id = -1;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    const std::size_t expected = two_dim ? 7u : 6u;
    if (cells.size() != expected) {
      throw IoError("paths csv line " + std::to_string(line_no) + ": expected " +
                    std::to_string(expected) + " columns");
    }
    std::size_t c = 0;
    const long id = std::stol(cells[c++]);
    Theta theta;
    theta.x1 = std::stod(cells[c++]);
    if (two_dim) {
      theta.x2 = std::stod(cells[c++]);
      theta.dim = 2;
    }
    const long n = std::stol(cells[c]);
    if (id != current_id) {
      if (id != current_id + 1) {
        throw IoError("paths csv line " + std::to_string(line_no) +
                      ": path ids must be consecutive");
      }
      paths.emplace_back();
      paths.back().theta = theta;
      paths.back().horizon = horizon;
      current_id = id;
    }
    if (n == 0) continue;  // zero-jump marker row
    Path& p = paths.back();
    p.arrivals.push_back(std::stod(cells[c + 1]));
    p.interarrivals.push_back(std::stod(cells[c + 2]));
    p.claims.push_back(std::stod(cells[c + 3]));
  }
  for (const Path& p : paths) {
    if (!p.arrivals.empty() && p.arrivals.back() > horizon) {
      throw DomainError("paths csv: arrival beyond the requested horizon " +
                        std::to_string(horizon));
    }
  }
  return paths;
}

}  // namespace cmrp
