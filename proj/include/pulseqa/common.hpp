#pragma once

#include <complex>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>

namespace pulseqa {

using Complex = std::complex<double>;

// Collects the first exception thrown inside an OpenMP region so it can be
// rethrown after the join; exceptions must not escape a parallel loop.
class ExceptionCollector {
public:
  template <typename F>
  void run(F&& body) noexcept {
    try {
      body();
    } catch (...) {
      const std::scoped_lock lock(mutex_);
      if (!first_) first_ = std::current_exception();
    }
  }

  void rethrow_if_any() {
    if (first_) std::rethrow_exception(first_);
  }

private:
  std::mutex mutex_;
  std::exception_ptr first_;
};

// Invalid parameters, malformed files, dimension mismatches. Maps to CLI exit 2.
class config_error : public std::runtime_error {
public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Integrator blow-up or other runtime numerical failure. Maps to CLI exit 3.
class numerical_error : public std::runtime_error {
public:
  numerical_error(const std::string& what, double t)
      : std::runtime_error(what + " (t=" + std::to_string(t) + ")"), t_(t) {}
  double offending_time() const { return t_; }

private:
  double t_;
};

}  // namespace pulseqa
