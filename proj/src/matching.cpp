#include "cmj/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "cmj/error.hpp"

namespace cmj {

void WeightMatrix::set(std::size_t i, std::size_t j, std::int64_t w) {
  if (w < 0) fail(ErrorKind::structural_input, "matching weights must be nonnegative");
  data_[i * k_ + j] = w;
  data_[j * k_ + i] = w;
}

namespace {

// Primal-dual O(n^3) weighted matching with blossom shrinking and expansion,
// following the structure of Galil's exposition. Endpoints are numbered
// p = 2k (first end of edge k) and p = 2k + 1 (second end); p ^ 1 is the
// opposite end. Labels: 0 free, 1 S-vertex, 2 T-vertex (bit 4 marks a scan).
class BlossomMatcher {
 public:
  BlossomMatcher(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges,
                 std::span<const std::int64_t> weights, bool max_cardinality)
      : n_(static_cast<long>(n)), max_cardinality_(max_cardinality) {
    const auto m = static_cast<long>(edges.size());
    eu_.resize(m);
    ev_.resize(m);
    ew_.resize(m);
    std::int64_t max_weight = 0;
    for (long k = 0; k < m; ++k) {
      eu_[k] = static_cast<long>(edges[k].first);
      ev_[k] = static_cast<long>(edges[k].second);
      // Doubled so that every dual variable stays integral.
      ew_[k] = 2 * weights[k];
      max_weight = std::max(max_weight, ew_[k]);
    }
    endpoint_.resize(2 * m);
    for (long p = 0; p < 2 * m; ++p) endpoint_[p] = (p % 2 == 0) ? eu_[p / 2] : ev_[p / 2];
    neighbend_.assign(n_, {});
    for (long k = 0; k < m; ++k) {
      neighbend_[eu_[k]].push_back(2 * k + 1);
      neighbend_[ev_[k]].push_back(2 * k);
    }
    mate_.assign(n_, -1);
    label_.assign(2 * n_, 0);
    labelend_.assign(2 * n_, -1);
    inblossom_.resize(n_);
    std::iota(inblossom_.begin(), inblossom_.end(), 0L);
    blossomparent_.assign(2 * n_, -1);
    blossomchilds_.assign(2 * n_, {});
    blossombase_.assign(2 * n_, -1);
    std::iota(blossombase_.begin(), blossombase_.begin() + n_, 0L);
    blossomendps_.assign(2 * n_, {});
    bestedge_.assign(2 * n_, -1);
    blossombestedges_.assign(2 * n_, {});
    has_bestedges_.assign(2 * n_, 0);
    for (long b = 2 * n_ - 1; b >= n_; --b) unusedblossoms_.push_back(b);
    dualvar_.assign(2 * n_, 0);
    std::fill(dualvar_.begin(), dualvar_.begin() + n_, max_weight);
    allowedge_.assign(m, 0);
  }

  std::vector<long> run() {
    if (eu_.empty()) return mate_;
    for (long stage = 0; stage < n_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (long b = n_; b < 2 * n_; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = 0;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), 0);
      queue_.clear();
      for (long v = 0; v < n_; ++v) {
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);
      }
      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const long v = queue_.back();
          queue_.pop_back();
          for (long p : neighbend_[v]) {
            const long k = p / 2;
            const long w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            std::int64_t kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = 1;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const long base = scan_blossom(v, w);
                if (base >= 0) {
                  add_blossom(base, k);
                } else {
                  augment_matching(k);
                  augmented = true;
                  break;
                }
              } else if (label_[w] == 0) {
                label_[w] = 2;
                labelend_[w] = p ^ 1;
              }
            } else if (label_[inblossom_[w]] == 1) {
              const long b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        int deltatype = -1;
        std::int64_t delta = 0;
        long deltaedge = -1;
        long deltablossom = -1;
        if (!max_cardinality_) {
          deltatype = 1;
          delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + n_);
        }
        for (long v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const std::int64_t d = slack(bestedge_[v]);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (long b = 0; b < 2 * n_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            const std::int64_t kslack = slack(bestedge_[b]);
            if (kslack % 2 != 0) fail(ErrorKind::internal, "blossom matcher lost dual integrality");
            const std::int64_t d = kslack / 2;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (long b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
              (deltatype == -1 || dualvar_[b] < delta)) {
            delta = dualvar_[b];
            deltatype = 4;
            deltablossom = b;
          }
        }
        if (deltatype == -1) {
          deltatype = 1;
          delta = std::max<std::int64_t>(
              0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n_));
        }

        for (long v = 0; v < n_; ++v) {
          if (label_[inblossom_[v]] == 1) {
            dualvar_[v] -= delta;
          } else if (label_[inblossom_[v]] == 2) {
            dualvar_[v] += delta;
          }
        }
        for (long b = n_; b < 2 * n_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1) {
              dualvar_[b] += delta;
            } else if (label_[b] == 2) {
              dualvar_[b] -= delta;
            }
          }
        }

        if (deltatype == 1) {
          break;
        } else if (deltatype == 2) {
          allowedge_[deltaedge] = 1;
          long i = eu_[deltaedge];
          if (label_[inblossom_[i]] == 0) i = ev_[deltaedge];
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = 1;
          queue_.push_back(eu_[deltaedge]);
        } else {
          expand_blossom(deltablossom, false);
        }
      }
      if (!augmented) break;
      for (long b = n_; b < 2 * n_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 &&
            dualvar_[b] == 0) {
          expand_blossom(b, true);
        }
      }
    }
    std::vector<long> result(n_, -1);
    for (long v = 0; v < n_; ++v) {
      if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
    }
    return result;
  }

 private:
  std::int64_t slack(long k) const { return dualvar_[eu_[k]] + dualvar_[ev_[k]] - 2 * ew_[k]; }

  void blossom_leaves(long b, std::vector<long>& out) const {
    if (b < n_) {
      out.push_back(b);
      return;
    }
    for (long t : blossomchilds_[b]) blossom_leaves(t, out);
  }

  std::vector<long> leaves(long b) const {
    std::vector<long> out;
    blossom_leaves(b, out);
    return out;
  }

  void assign_label(long w, int t, long p) {
    const long b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      blossom_leaves(b, queue_);
    } else if (t == 2) {
      const long base = blossombase_[b];
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  long scan_blossom(long v, long w) {
    std::vector<long> path;
    long base = -1;
    while (v != -1 || w != -1) {
      long b = inblossom_[v];
      if (label_[b] & 4) {
        base = blossombase_[b];
        break;
      }
      path.push_back(b);
      label_[b] = 5;
      if (labelend_[b] == -1) {
        v = -1;
      } else {
        v = endpoint_[labelend_[b]];
        b = inblossom_[v];
        v = endpoint_[labelend_[b]];
      }
      if (w != -1) std::swap(v, w);
    }
    for (long b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(long base, long k) {
    long v = eu_[k];
    long w = ev_[k];
    const long bb = inblossom_[base];
    long bv = inblossom_[v];
    long bw = inblossom_[w];
    const long b = unusedblossoms_.back();
    unusedblossoms_.pop_back();
    blossombase_[b] = base;
    blossomparent_[b] = -1;
    blossomparent_[bb] = b;
    auto& path = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    path.clear();
    endps.clear();
    while (bv != bb) {
      blossomparent_[bv] = b;
      path.push_back(bv);
      endps.push_back(labelend_[bv]);
      v = endpoint_[labelend_[bv]];
      bv = inblossom_[v];
    }
    path.push_back(bb);
    std::reverse(path.begin(), path.end());
    std::reverse(endps.begin(), endps.end());
    endps.push_back(2 * k);
    while (bw != bb) {
      blossomparent_[bw] = b;
      path.push_back(bw);
      endps.push_back(labelend_[bw] ^ 1);
      w = endpoint_[labelend_[bw]];
      bw = inblossom_[w];
    }
    label_[b] = 1;
    labelend_[b] = labelend_[bb];
    dualvar_[b] = 0;
    for (long leaf : leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    }

    std::vector<long> bestedgeto(2 * n_, -1);
    for (long sub : path) {
      std::vector<long> candidates;
      if (!has_bestedges_[sub]) {
        for (long leaf : leaves(sub)) {
          for (long p : neighbend_[leaf]) candidates.push_back(p / 2);
        }
      } else {
        candidates = blossombestedges_[sub];
      }
      for (long e : candidates) {
        long j = ev_[e];
        if (inblossom_[j] == b) j = eu_[e];
        const long bj = inblossom_[j];
        if (bj != b && label_[bj] == 1 &&
            (bestedgeto[bj] == -1 || slack(e) < slack(bestedgeto[bj]))) {
          bestedgeto[bj] = e;
        }
      }
      blossombestedges_[sub].clear();
      has_bestedges_[sub] = 0;
      bestedge_[sub] = -1;
    }
    blossombestedges_[b].clear();
    for (long e : bestedgeto) {
      if (e != -1) blossombestedges_[b].push_back(e);
    }
    has_bestedges_[b] = 1;
    bestedge_[b] = -1;
    for (long e : blossombestedges_[b]) {
      if (bestedge_[b] == -1 || slack(e) < slack(bestedge_[b])) bestedge_[b] = e;
    }
  }

  void expand_blossom(long b, bool endstage) {
    const std::vector<long> children = blossomchilds_[b];
    for (long s : children) {
      blossomparent_[s] = -1;
      if (s < n_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (long leaf : leaves(s)) inblossom_[leaf] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const auto& childs = blossomchilds_[b];
      const auto& endps = blossomendps_[b];
      const long len = static_cast<long>(childs.size());
      const long entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      long j = static_cast<long>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
      long jstep;
      long endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      auto at = [len](const std::vector<long>& vec, long idx) { return vec[((idx % len) + len) % len]; };
      long p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[at(endps, j - endptrick) ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[at(endps, j - endptrick) / 2] = 1;
        j += jstep;
        p = at(endps, j - endptrick) ^ endptrick;
        allowedge_[p / 2] = 1;
        j += jstep;
      }
      long bv = at(childs, j);
      label_[endpoint_[p ^ 1]] = label_[bv] = 2;
      labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
      bestedge_[bv] = -1;
      j += jstep;
      while (at(childs, j) != entrychild) {
        bv = at(childs, j);
        if (label_[bv] == 1) {
          j += jstep;
          continue;
        }
        long found = -1;
        for (long leaf : leaves(bv)) {
          if (label_[leaf] != 0) {
            found = leaf;
            break;
          }
        }
        if (found != -1) {
          label_[found] = 0;
          label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
          assign_label(found, 2, labelend_[found]);
        }
        j += jstep;
      }
    }
    label_[b] = labelend_[b] = -1;
    blossomchilds_[b].clear();
    blossomendps_[b].clear();
    blossombase_[b] = -1;
    blossombestedges_[b].clear();
    has_bestedges_[b] = 0;
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
  }

  void augment_blossom(long b, long v) {
    long t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= n_) augment_blossom(t, v);
    auto& childs = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    const long len = static_cast<long>(childs.size());
    auto at = [len](const std::vector<long>& vec, long idx) { return vec[((idx % len) + len) % len]; };
    const long i = static_cast<long>(std::find(childs.begin(), childs.end(), t) - childs.begin());
    long j = i;
    long jstep;
    long endptrick;
    if (i & 1) {
      j -= len;
      jstep = 1;
      endptrick = 0;
    } else {
      jstep = -1;
      endptrick = 1;
    }
    while (j != 0) {
      j += jstep;
      t = at(childs, j);
      const long p = at(endps, j - endptrick) ^ endptrick;
      if (t >= n_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = at(childs, j);
      if (t >= n_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
  }

  void augment_matching(long k) {
    const long ends[2][2] = {{eu_[k], 2 * k + 1}, {ev_[k], 2 * k}};
    for (const auto& start : ends) {
      long s = start[0];
      long p = start[1];
      while (true) {
        const long bs = inblossom_[s];
        if (bs >= n_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const long t = endpoint_[labelend_[bs]];
        const long bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        const long j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= n_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  long n_;
  bool max_cardinality_;
  std::vector<long> eu_, ev_;
  std::vector<std::int64_t> ew_;
  std::vector<long> endpoint_;
  std::vector<std::vector<long>> neighbend_;
  std::vector<long> mate_;
  std::vector<int> label_;
  std::vector<long> labelend_;
  std::vector<long> inblossom_;
  std::vector<long> blossomparent_;
  std::vector<std::vector<long>> blossomchilds_;
  std::vector<long> blossombase_;
  std::vector<std::vector<long>> blossomendps_;
  std::vector<long> bestedge_;
  std::vector<std::vector<long>> blossombestedges_;
  std::vector<char> has_bestedges_;
  std::vector<long> unusedblossoms_;
  std::vector<std::int64_t> dualvar_;
  std::vector<char> allowedge_;
  std::vector<long> queue_;
};

void require_even(std::size_t k) {
  if (k % 2 != 0) {
    fail(ErrorKind::structural_input,
         "perfect matching needs an even number of points, got " + std::to_string(k));
  }
}

// Optimal perfect matching on a subset of points; mate is indexed by
// position in `points`.
std::vector<long> solve_subset(const WeightMatrix& weights, std::span<const std::size_t> points) {
  const std::size_t k = points.size();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::int64_t> profit;
  edges.reserve(k * (k - 1) / 2);
  std::int64_t top = 0;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) top = std::max(top, weights(points[a], points[b]));
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      edges.emplace_back(a, b);
      profit.push_back(top + 1 - weights(points[a], points[b]));
    }
  }
  auto mate = max_weight_matching(k, edges, profit, true);
  for (long m : mate) {
    if (m < 0) fail(ErrorKind::internal, "blossom matcher returned a non-perfect matching");
  }
  return mate;
}

std::int64_t subset_weight(const WeightMatrix& weights, std::span<const std::size_t> points,
                           const std::vector<long>& mate) {
  std::int64_t total = 0;
  for (std::size_t a = 0; a < points.size(); ++a) {
    const auto b = static_cast<std::size_t>(mate[a]);
    if (a < b) total += weights(points[a], points[b]);
  }
  return total;
}

}  // namespace

std::vector<long> max_weight_matching(std::size_t vertex_count,
                                      std::span<const std::pair<std::size_t, std::size_t>> edges,
                                      std::span<const std::int64_t> weights,
                                      bool max_cardinality) {
  if (edges.size() != weights.size()) {
    fail(ErrorKind::structural_input, "edge and weight lists differ in length");
  }
  for (const auto& [u, v] : edges) {
    if (u >= vertex_count || v >= vertex_count || u == v) {
      fail(ErrorKind::structural_input, "matching edge has an invalid endpoint");
    }
  }
  BlossomMatcher matcher(vertex_count, edges, weights, max_cardinality);
  return matcher.run();
}

std::int64_t min_perfect_matching_weight(const WeightMatrix& weights,
                                         std::span<const std::size_t> points) {
  require_even(points.size());
  if (points.empty()) return 0;
  const auto mate = solve_subset(weights, points);
  return subset_weight(weights, points, mate);
}

std::int64_t min_perfect_matching_weight(const WeightMatrix& weights) {
  std::vector<std::size_t> all(weights.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return min_perfect_matching_weight(weights, all);
}

PerfectMatching min_weight_perfect_matching(const WeightMatrix& weights) {
  const std::size_t k = weights.size();
  require_even(k);
  PerfectMatching result;
  if (k == 0) return result;

  std::vector<std::size_t> remaining(k);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::vector<std::size_t> partner(k);
  {
    const auto mate = solve_subset(weights, remaining);
    for (std::size_t a = 0; a < k; ++a) partner[a] = static_cast<std::size_t>(mate[a]);
  }
  std::int64_t optimum = 0;
  for (std::size_t a = 0; a < k; ++a) {
    if (a < partner[a]) optimum += weights(a, partner[a]);
  }
  result.weight = optimum;

  // Invariant: `partner` restricted to `remaining` is an optimal perfect
  // matching of `remaining` with weight `optimum`.
  while (!remaining.empty()) {
    const std::size_t i = remaining.front();
    for (std::size_t idx = 1; idx < remaining.size() && remaining[idx] < partner[i]; ++idx) {
      const std::size_t j = remaining[idx];
      std::vector<std::size_t> rest;
      rest.reserve(remaining.size() - 2);
      for (std::size_t x : remaining) {
        if (x != i && x != j) rest.push_back(x);
      }
      std::vector<long> mate;
      std::int64_t value = weights(i, j);
      if (!rest.empty()) {
        mate = solve_subset(weights, rest);
        value += subset_weight(weights, rest, mate);
      }
      if (value == optimum) {
        partner[i] = j;
        partner[j] = i;
        for (std::size_t a = 0; a < rest.size(); ++a) partner[rest[a]] = rest[static_cast<std::size_t>(mate[a])];
        break;
      }
    }
    const std::size_t j = partner[i];
    result.pairs.emplace_back(i, j);
    optimum -= weights(i, j);
    remaining.erase(std::remove_if(remaining.begin(), remaining.end(),
                                   [&](std::size_t x) { return x == i || x == j; }),
                    remaining.end());
  }
  return result;
}

PerfectMatching min_weight_perfect_matching_dp(const WeightMatrix& weights) {
  const std::size_t k = weights.size();
  require_even(k);
  if (k > kMaxDpPoints) {
    fail(ErrorKind::oracle_scale, "subset matching DP supports at most 16 points, got " + std::to_string(k));
  }
  PerfectMatching result;
  if (k == 0) return result;
  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<std::int64_t> best(full + 1, kInf);
  best[0] = 0;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    for (std::size_t j = low + 1; j < k; ++j) {
      if (!(mask >> j & 1U)) continue;
      const std::size_t rest = mask & ~(std::size_t{1} << low) & ~(std::size_t{1} << j);
      if (best[rest] == kInf) continue;
      best[mask] = std::min(best[mask], weights(low, j) + best[rest]);
    }
  }
  result.weight = best[full];
  std::size_t mask = full;
  while (mask != 0) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    for (std::size_t j = low + 1; j < k; ++j) {
      if (!(mask >> j & 1U)) continue;
      const std::size_t rest = mask & ~(std::size_t{1} << low) & ~(std::size_t{1} << j);
      if (best[rest] != kInf && weights(low, j) + best[rest] == best[mask]) {
        result.pairs.emplace_back(low, j);
        mask = rest;
        break;
      }
    }
  }
  return result;
}

}  // namespace cmj
