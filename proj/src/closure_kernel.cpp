#include "polygate/closure_kernel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace polygate::kernel {

namespace {

std::size_t space_of(int modes) { return std::size_t{1} << (4 * modes); }

// Visits the fresh part of the triple space for one outer gate, in the
// fixed (x, y) order shared by both kernels.
template <typename Visit>
std::uint64_t for_each_fresh(const PassRequest& req, std::size_t i, Visit&& visit) {
  const std::uint64_t mask = packed::mode_mask(req.modes);
  const GateMasks& g = req.outer[i];
  const std::size_t n = req.inner.size();
  const bool outer_new = i >= req.outer_fresh;
  std::uint64_t evals = 0;
  if (req.unary) {
    for (std::size_t x = outer_new ? 0 : req.inner_fresh; x < n; ++x) {
      visit(compose(g, req.inner[x], req.inner[x], mask), x, x);
      ++evals;
    }
    return evals;
  }
  for (std::size_t x = 0; x < n; ++x) {
    const std::uint64_t xv = req.inner[x];
    const std::size_t y0 = (outer_new || x >= req.inner_fresh) ? 0 : req.inner_fresh;
    for (std::size_t y = y0; y < n; ++y) {
      visit(compose(g, xv, req.inner[y], mask), x, y);
    }
    evals += n - y0;
  }
  return evals;
}

}  // namespace

PassResult run_pass_serial(const PassRequest& req) {
  PassResult out;
  std::vector<std::uint8_t> taken(space_of(req.modes), 0);
  for (std::size_t i = 0; i < req.outer.size(); ++i) {
    out.evaluations += for_each_fresh(req, i, [&](std::uint64_t fn, std::size_t x, std::size_t y) {
      if (req.known[fn] != 0 || taken[fn] != 0) return;
      taken[fn] = 1;
      out.fresh.push_back({fn, static_cast<std::int32_t>(i), static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
    });
  }
  return out;
}

PassResult run_pass_parallel(const PassRequest& req) {
  const std::size_t n_outer = req.outer.size();
  const std::size_t space = space_of(req.modes);
  std::vector<std::vector<Candidate>> per_outer(n_outer);
  std::uint64_t evaluations = 0;

#pragma omp parallel reduction(+ : evaluations)
  {
    // stamp[fn] == i + 1 marks fn as already collected for outer gate i.
    std::vector<std::uint32_t> stamp(space, 0);
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n_outer); ++si) {
      const auto i = static_cast<std::size_t>(si);
      const auto tag = static_cast<std::uint32_t>(i + 1);
      std::vector<Candidate>& local = per_outer[i];
      evaluations += for_each_fresh(req, i, [&](std::uint64_t fn, std::size_t x, std::size_t y) {
        if (req.known[fn] != 0 || stamp[fn] == tag) return;
        stamp[fn] = tag;
        local.push_back({fn, static_cast<std::int32_t>(i), static_cast<std::int32_t>(x), static_cast<std::int32_t>(y)});
      });
    }
  }

  PassResult out;
  out.evaluations = evaluations;
  std::vector<std::uint8_t> taken(space, 0);
  for (const auto& local : per_outer) {
    for (const Candidate& c : local) {
      if (taken[c.function] != 0) continue;
      taken[c.function] = 1;
      out.fresh.push_back(c);
    }
  }
  return out;
}

int parallel_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace polygate::kernel
