#include "entctl/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "entctl/entanglement.hpp"
#include "entctl/trajectory.hpp"

namespace entctl {

namespace {

constexpr int kBlockSize = 32;  // trajectories per reduction block

int pick_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(hw == 0 ? 1 : (hw > 16 ? 16 : hw));
}

struct BlockAccumulator {
  std::vector<ComplexMatrix> rho_sum;  // per sample
  long jumps = 0;
  long large_p = 0;
};

}  // namespace

EnsembleStats run_ensemble(const ScenarioConfig& cfg, int threads) {
  validate(cfg);
  if (cfg.dt > cfg.tau_c / 5.0)
    std::fprintf(stderr,
                 "warning: dt = %g is coarse relative to tau_c = %g (ratio > 1/5); "
                 "the OU update may be inaccurate\n",
                 cfg.dt, cfg.tau_c);

  const int n = cfg.n_traj;
  const int steps = cfg.steps();
  const int stride = cfg.sample_stride;
  const int nsamp = cfg.sample_count();
  const StepContext ctx = make_step_context(cfg);

  EnsembleStats out;
  out.cfg = cfg;
  out.n_traj = n;
  out.master_seed = cfg.master_seed;
  out.times.resize(nsamp);
  for (int si = 0; si < nsamp; ++si) out.times[si] = static_cast<double>(si) * stride * cfg.dt;

  out.negativity_series.assign(static_cast<std::size_t>(n) * nsamp, 0.0);
  std::vector<double> zz_series(static_cast<std::size_t>(n) * nsamp, 0.0);
  std::vector<double> dz_series(static_cast<std::size_t>(n) * nsamp, 0.0);

  const int n_blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<BlockAccumulator> blocks(n_blocks);

  std::atomic<int> next_block{0};
  auto worker = [&]() {
    for (;;) {
      const int b = next_block.fetch_add(1);
      if (b >= n_blocks) return;
      BlockAccumulator& acc = blocks[b];
      acc.rho_sum.assign(nsamp, ComplexMatrix(4));
      const int lo = b * kBlockSize;
      const int hi = std::min(n, lo + kBlockSize);
      for (int k = lo; k < hi; ++k) {
        TrajectoryState s = make_trajectory(cfg, static_cast<std::uint64_t>(k));
        const std::size_t row = static_cast<std::size_t>(k) * nsamp;
        int si = 0;
        for (int step = 0;; ++step) {
          if (step % stride == 0) {
            out.negativity_series[row + si] = negativity_pure(s.psi);
            zz_series[row + si] = zz_correlation(s.psi);
            dz_series[row + si] = s.dz;
            acc.rho_sum[si] += outer(s.psi);
            ++si;
          }
          if (step == steps) break;
          step_closed_loop(s, ctx);
        }
        acc.jumps += s.jumps;
        acc.large_p += s.large_p_warnings;
      }
    }
  };

  const int nthreads = std::min(pick_threads(threads), n_blocks);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  // deterministic reduction: fixed trajectory order, then fixed block order
  out.mean_negativity.resize(nsamp);
  out.sem_negativity.resize(nsamp);
  out.mean_zz.resize(nsamp);
  out.sem_zz.resize(nsamp);
  out.mean_dz.resize(nsamp);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int si = 0; si < nsamp; ++si) {
    double sn = 0, sz = 0, sd = 0;
    for (int k = 0; k < n; ++k) {
      const std::size_t row = static_cast<std::size_t>(k) * nsamp;
      sn += out.negativity_series[row + si];
      sz += zz_series[row + si];
      sd += dz_series[row + si];
    }
    const double mn = sn * inv_n;
    const double mz = sz * inv_n;
    out.mean_negativity[si] = mn;
    out.mean_zz[si] = mz;
    out.mean_dz[si] = sd * inv_n;
    if (n > 1) {
      double vn = 0, vz = 0;
      for (int k = 0; k < n; ++k) {
        const std::size_t row = static_cast<std::size_t>(k) * nsamp;
        const double dn = out.negativity_series[row + si] - mn;
        const double dz = zz_series[row + si] - mz;
        vn += dn * dn;
        vz += dz * dz;
      }
      out.sem_negativity[si] = std::sqrt(vn / (n - 1)) / std::sqrt(static_cast<double>(n));
      out.sem_zz[si] = std::sqrt(vz / (n - 1)) / std::sqrt(static_cast<double>(n));
    } else {
      out.sem_negativity[si] = 0.0;
      out.sem_zz[si] = 0.0;
    }
  }

  out.mean_rho.assign(nsamp, ComplexMatrix(4));
  for (int si = 0; si < nsamp; ++si) {
    for (const BlockAccumulator& acc : blocks) out.mean_rho[si] += acc.rho_sum[si];
    out.mean_rho[si] *= cplx(inv_n);
  }
  for (const BlockAccumulator& acc : blocks) {
    out.total_jumps += acc.jumps;
    out.large_p_warnings += acc.large_p;
  }
  return out;
}

EnsembleStats run_ensemble(ScenarioConfig cfg, int n_traj, std::uint64_t master_seed,
                           int threads) {
  cfg.n_traj = n_traj;
  cfg.master_seed = master_seed;
  return run_ensemble(cfg, threads);
}

WindowAverage time_averaged_negativity(const EnsembleStats& stats, double t_start,
                                       double t_end) {
  const int nsamp = static_cast<int>(stats.times.size());
  int lo = nsamp, hi = -1;
  for (int si = 0; si < nsamp; ++si) {
    if (stats.times[si] >= t_start - 1e-12 && stats.times[si] <= t_end + 1e-12) {
      lo = std::min(lo, si);
      hi = std::max(hi, si);
    }
  }
  if (hi < lo) throw std::invalid_argument("time_averaged_negativity: empty window");
  const int m = hi - lo + 1;
  const int n = stats.n_traj;

  // per-trajectory window means, then mean/sem across trajectories
  std::vector<double> per_traj(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double s = 0;
    for (int si = lo; si <= hi; ++si) s += stats.neg_at(k, si);
    per_traj[k] = s / m;
  }
  double mean = 0;
  for (double v : per_traj) mean += v;
  mean /= n;
  double var = 0;
  for (double v : per_traj) var += (v - mean) * (v - mean);
  WindowAverage out;
  out.n_bar = mean;
  out.sem = n > 1 ? std::sqrt(var / (n - 1)) / std::sqrt(static_cast<double>(n)) : 0.0;
  return out;
}

LindbladTrace integrate_lindblad(const ComplexMatrix& h,
                                 const std::vector<JumpChannel>& channels,
                                 const ComplexMatrix& rho0, double t_total,
                                 double sample_dt, double dt_ref) {
  if (!(dt_ref > 0.0)) throw std::invalid_argument("integrate_lindblad: dt_ref must be > 0");
  const long per_sample = std::llround(sample_dt / dt_ref);
  if (per_sample < 1 || std::abs(per_sample * dt_ref - sample_dt) > 1e-9)
    throw std::invalid_argument(
        "integrate_lindblad: sample spacing must be a multiple of dt_ref");

  struct Dissipator {
    ComplexMatrix l, ldag, ldl;
    double rate;
  };
  std::vector<Dissipator> ds;
  for (const JumpChannel& ch : channels)
    ds.push_back({ch.op, ch.op.adjoint(), ch.op.adjoint() * ch.op, ch.rate});

  auto rhs = [&](const ComplexMatrix& rho) {
    ComplexMatrix out = cplx(0.0, -1.0) * (h * rho - rho * h);
    for (const Dissipator& d : ds) {
      out += d.rate * (d.l * rho * d.ldag);
      out -= cplx(0.5 * d.rate) * (d.ldl * rho + rho * d.ldl);
    }
    return out;
  };

  const int nsamp = static_cast<int>(std::llround(t_total / sample_dt)) + 1;
  const ComplexMatrix zz = kron(sigma_z(), sigma_z());
  ComplexMatrix rho = rho0;
  LindbladTrace out;
  out.times.reserve(nsamp);
  out.rho.reserve(nsamp);
  out.zz.reserve(nsamp);
  for (int si = 0; si < nsamp; ++si) {
    out.times.push_back(static_cast<double>(si) * sample_dt);
    out.rho.push_back(rho);
    out.zz.push_back((rho * zz).trace().real());
    if (si + 1 == nsamp) break;
    for (long s = 0; s < per_sample; ++s) {
      const ComplexMatrix k1 = rhs(rho);
      ComplexMatrix tmp = rho;
      tmp += cplx(0.5 * dt_ref) * k1;
      const ComplexMatrix k2 = rhs(tmp);
      tmp = rho;
      tmp += cplx(0.5 * dt_ref) * k2;
      const ComplexMatrix k3 = rhs(tmp);
      tmp = rho;
      tmp += cplx(dt_ref) * k3;
      const ComplexMatrix k4 = rhs(tmp);
      ComplexMatrix incr = k1;
      incr += k4;
      incr += cplx(2.0) * k2;
      incr += cplx(2.0) * k3;
      rho += cplx(dt_ref / 6.0) * incr;
    }
  }
  return out;
}

LindbladTrace lindblad_reference(const ScenarioConfig& cfg, double dt_ref) {
  if (cfg.sigma != 0.0)
    throw std::invalid_argument("lindblad_reference: requires sigma = 0");
  if (cfg.feedback)
    throw std::invalid_argument("lindblad_reference: requires feedback off");

  const ComplexMatrix h =
      build_hamiltonian(couplings(cfg.model), {cfg.b0, 0.0, 0.0}, {cfg.dz0});
  return integrate_lindblad(h, make_jump_channels({cfg.gamma1, cfg.gamma2}),
                            outer(initial_state({cfg.alpha})), cfg.t_total,
                            cfg.sample_stride * cfg.dt, dt_ref);
}

}  // namespace entctl
