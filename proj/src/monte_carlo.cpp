#include "rgsrate/monte_carlo.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace rgsrate {

namespace {

constexpr uint64_t block_size = 4096;

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// one canonical double in [0, 1); avoids std distributions, whose draw
// sequences differ between standard libraries
struct rng {
    std::mt19937_64 eng;
    explicit rng(uint64_t s) : eng(s) {}
    double u() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
};

// implicit layout: levels 1..n stored contiguously, children of the j-th
// node of level k occupy a b_k slice of level k+1
struct tree_layout {
    std::vector<int> b;
    std::vector<size_t> off;   // off[k] for k = 1..n, off[n+1] = total
    std::vector<size_t> cnt;   // nodes per level
    size_t total = 0;
    int depth = 0;

    explicit tree_layout(const tree_vector& t) : b(t.branches()) {
        depth = t.depth();
        off.assign(static_cast<size_t>(depth) + 2, 0);
        cnt.assign(static_cast<size_t>(depth) + 1, 0);
        size_t c = 1;
        for (int k = 1; k <= depth; ++k) {
            c *= static_cast<size_t>(b[static_cast<size_t>(k - 1)]);
            cnt[static_cast<size_t>(k)] = c;
            off[static_cast<size_t>(k) + 1] = off[static_cast<size_t>(k)] + c;
            total += c;
        }
    }
};

struct counters {
    uint64_t succ_x = 0;
    uint64_t succ_z = 0;
    uint64_t err_x = 0;
    uint64_t err_z = 0;
    uint64_t samples = 0;

    void add(const counters& o) {
        succ_x += o.succ_x;
        succ_z += o.succ_z;
        err_x += o.err_x;
        err_z += o.err_z;
        samples += o.samples;
    }
};

// scratch reused across samples
struct workspace {
    std::vector<uint8_t> present;
    std::vector<uint8_t> flip_z;
    std::vector<uint8_t> flip_x;
    std::vector<uint8_t> z_meas;
    std::vector<uint8_t> z_err;
    std::vector<uint8_t> attempt;

    explicit workspace(const tree_layout& lay) {
        present.assign(lay.total, 0);
        flip_z.assign(lay.total, 0);
        flip_x.assign(lay.total, 0);
        z_meas.assign(lay.total, 0);
        z_err.assign(lay.total, 0);
        int bmax = 1;
        for (const int bk : lay.b)
            bmax = std::max(bmax, bk);
        attempt.assign(static_cast<size_t>(bmax), 0);
    }
};

// majority over the collected attempt bits; an even count drops one vote at
// a uniformly drawn index, mirroring the analytic model
bool majority_bit(workspace& ws, int m_att, rng& g) {
    int m = m_att;
    if (m % 2 == 0) {
        const int drop = static_cast<int>(g.u() * m);
        ws.attempt[static_cast<size_t>(drop)] =
            ws.attempt[static_cast<size_t>(m - 1)];
        --m;
    }
    int wrong = 0;
    for (int i = 0; i < m; ++i)
        wrong += ws.attempt[static_cast<size_t>(i)];
    return 2 * wrong > m;
}

// one sample; draw order is fixed: presence for every node, then (with
// errors) z flips for every node, then x flips for every node, then any
// tie-break draws in evaluation order
void run_sample(const tree_layout& lay, double p_ph, double eps,
                bool with_errors, workspace& ws, rng& g, counters& c) {
    for (size_t i = 0; i < lay.total; ++i)
        ws.present[i] = g.u() < p_ph ? 1 : 0;
    if (with_errors) {
        for (size_t i = 0; i < lay.total; ++i)
            ws.flip_z[i] = g.u() < eps ? 1 : 0;
        for (size_t i = 0; i < lay.total; ++i)
            ws.flip_x[i] = g.u() < eps ? 1 : 0;
    }

    const int n = lay.depth;
    for (int k = n; k >= 1; --k) {
        const size_t base = lay.off[static_cast<size_t>(k)];
        const int bk = k < n ? lay.b[static_cast<size_t>(k)] : 0;
        const size_t cbase = k < n ? lay.off[static_cast<size_t>(k) + 1] : 0;
        const int bk1 = k + 1 < n ? lay.b[static_cast<size_t>(k + 1)] : 0;
        const size_t gbase =
            k + 1 < n ? lay.off[static_cast<size_t>(k) + 2] : 0;
        for (size_t j = 0; j < lay.cnt[static_cast<size_t>(k)]; ++j) {
            const size_t node = base + j;
            int m_att = 0;
            for (int ci = 0; ci < bk; ++ci) {
                const size_t child = cbase + j * static_cast<size_t>(bk) +
                                     static_cast<size_t>(ci);
                if (!ws.present[child])
                    continue;
                const size_t gslice = child - cbase;
                bool ok = true;
                uint8_t bit = with_errors ? ws.flip_x[child] : 0;
                for (int gi = 0; gi < bk1; ++gi) {
                    const size_t gc = gbase +
                                      gslice * static_cast<size_t>(bk1) +
                                      static_cast<size_t>(gi);
                    if (!ws.z_meas[gc]) {
                        ok = false;
                        break;
                    }
                    bit ^= ws.z_err[gc];
                }
                if (ok)
                    ws.attempt[static_cast<size_t>(m_att++)] = bit;
            }
            if (m_att > 0) {
                // indirect outcome wins even when the photon is present
                ws.z_meas[node] = 1;
                ws.z_err[node] =
                    with_errors ? (majority_bit(ws, m_att, g) ? 1 : 0) : 0;
            } else if (ws.present[node]) {
                ws.z_meas[node] = 1;
                ws.z_err[node] = with_errors ? ws.flip_z[node] : 0;
            } else {
                ws.z_meas[node] = 0;
                ws.z_err[node] = 0;
            }
        }
    }

    // logical X: at least one level-1 indirect attempt
    const int b0 = lay.b[0];
    const size_t cbase = lay.off[1];
    const int b1 = n > 1 ? lay.b[1] : 0;
    const size_t gbase = n > 1 ? lay.off[2] : 0;
    int m_att = 0;
    for (int ci = 0; ci < b0; ++ci) {
        const size_t child = cbase + static_cast<size_t>(ci);
        if (!ws.present[child])
            continue;
        bool ok = true;
        uint8_t bit = with_errors ? ws.flip_x[child] : 0;
        for (int gi = 0; gi < b1; ++gi) {
            const size_t gc = gbase +
                              static_cast<size_t>(ci) *
                                  static_cast<size_t>(b1) +
                              static_cast<size_t>(gi);
            if (!ws.z_meas[gc]) {
                ok = false;
                break;
            }
            bit ^= ws.z_err[gc];
        }
        if (ok)
            ws.attempt[static_cast<size_t>(m_att++)] = bit;
    }
    if (m_att > 0) {
        c.succ_x += 1;
        if (with_errors && majority_bit(ws, m_att, g))
            c.err_x += 1;
    }

    // logical Z: every level-1 node measured; outcome is their parity
    bool all_meas = true;
    uint8_t parity = 0;
    for (int ci = 0; ci < b0; ++ci) {
        const size_t child = cbase + static_cast<size_t>(ci);
        if (!ws.z_meas[child]) {
            all_meas = false;
            break;
        }
        parity ^= ws.z_err[child];
    }
    if (all_meas) {
        c.succ_z += 1;
        if (with_errors && parity)
            c.err_z += 1;
    }
    c.samples += 1;
}

int resolve_threads(const mc_config& cfg) {
    int t = cfg.threads;
    if (t == 0) {
        if (const char* env = std::getenv("RGSRATE_THREADS"))
            t = std::atoi(env);
        if (t == 0)
            t = static_cast<int>(std::thread::hardware_concurrency());
    }
    return std::max(1, t);
}

counters run_blocks(const tree_vector& b, double p_ph, double eps,
                    bool with_errors, const mc_config& cfg) {
    if (!(p_ph >= 0.0 && p_ph <= 1.0))
        throw std::domain_error("p_ph must be in [0, 1]");
    if (!(eps >= 0.0 && eps <= 0.5))
        throw std::domain_error("eps must be in [0, 0.5]");
    if (cfg.n_samples == 0)
        throw std::domain_error("n_samples must be positive");

    const tree_layout lay(b);
    const uint64_t n_blocks = (cfg.n_samples + block_size - 1) / block_size;
    const int threads =
        std::min<int>(resolve_threads(cfg),
                      static_cast<int>(std::min<uint64_t>(
                          n_blocks, static_cast<uint64_t>(1 << 20))));

    const auto worker = [&](int tid, counters* out) {
        workspace ws(lay);
        counters acc;
        for (uint64_t blk = static_cast<uint64_t>(tid); blk < n_blocks;
             blk += static_cast<uint64_t>(threads)) {
            rng g(splitmix64(cfg.seed ^
                             (0x9e3779b97f4a7c15ULL * (blk + 1))));
            const uint64_t begin = blk * block_size;
            const uint64_t end =
                std::min<uint64_t>(begin + block_size, cfg.n_samples);
            for (uint64_t s = begin; s < end; ++s)
                run_sample(lay, p_ph, eps, with_errors, ws, g, acc);
        }
        *out = acc;
    };

    std::vector<counters> parts(static_cast<size_t>(threads));
    if (threads == 1) {
        worker(0, &parts[0]);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker, t, &parts[static_cast<size_t>(t)]);
        for (std::thread& th : pool)
            th.join();
    }
    counters total;
    for (const counters& p : parts)
        total.add(p); // integer merge: identical for any thread count
    return total;
}

mc_estimate ratio_estimate(uint64_t hits, uint64_t trials) {
    mc_estimate e;
    e.n = trials;
    if (trials == 0)
        return e;
    const double p = static_cast<double>(hits) / static_cast<double>(trials);
    e.mean = p;
    e.std_err = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    return e;
}

} // namespace

mc_tree_result mc_tree_success(const tree_vector& b, double p_ph,
                               const mc_config& cfg) {
    const counters c = run_blocks(b, p_ph, 0.0, false, cfg);
    mc_tree_result out;
    out.pr_mx = ratio_estimate(c.succ_x, c.samples);
    out.pr_mz = ratio_estimate(c.succ_z, c.samples);
    return out;
}

mc_logical_result mc_logical_error(const tree_vector& b, double p_ph,
                                   double eps, const mc_config& cfg) {
    const counters c = run_blocks(b, p_ph, eps, eps > 0.0, cfg);
    mc_logical_result out;
    out.pr_mx = ratio_estimate(c.succ_x, c.samples);
    out.pr_mz = ratio_estimate(c.succ_z, c.samples);
    out.ebar_x = ratio_estimate(c.err_x, c.succ_x);
    out.ebar_z = ratio_estimate(c.err_z, c.succ_z);
    return out;
}

} // namespace rgsrate
