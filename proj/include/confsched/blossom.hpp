#ifndef CONFSCHED_BLOSSOM_HPP
#define CONFSCHED_BLOSSOM_HPP

// Maximum weight matching in general graphs by Edmonds' blossom algorithm
// with dual variables, O(V^3). Integer weights only: callers scale weights
// so that every dual update stays integral.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace confsched::detail {

struct IntEdge {
  int a;
  int b;
  std::int64_t w;
};

class BlossomMatcher {
 public:
  /// Weights must be non-negative and even. With max_cardinality the result
  /// is a maximum weight matching among those of maximum cardinality.
  BlossomMatcher(int nvertex, const std::vector<IntEdge>& edges, bool max_cardinality)
      : nv_(nvertex), edges_(edges), max_card_(max_cardinality) {}

  /// mate[v] = matched neighbour of v, or -1.
  std::vector<int> solve() {
    const int ne = static_cast<int>(edges_.size());
    if (nv_ == 0 || ne == 0) return std::vector<int>(nv_, -1);

    std::int64_t maxweight = 0;
    for (const auto& e : edges_) maxweight = std::max(maxweight, e.w);

    endpoint_.resize(2 * ne);
    for (int k = 0; k < ne; ++k) {
      endpoint_[2 * k] = edges_[k].a;
      endpoint_[2 * k + 1] = edges_[k].b;
    }
    neighbend_.assign(nv_, {});
    for (int k = 0; k < ne; ++k) {
      neighbend_[edges_[k].a].push_back(2 * k + 1);
      neighbend_[edges_[k].b].push_back(2 * k);
    }
    mate_.assign(nv_, -1);
    label_.assign(2 * nv_, 0);
    labelend_.assign(2 * nv_, -1);
    inblossom_.resize(nv_);
    for (int v = 0; v < nv_; ++v) inblossom_[v] = v;
    blossomparent_.assign(2 * nv_, -1);
    blossomchilds_.assign(2 * nv_, {});
    blossombase_.assign(2 * nv_, -1);
    for (int v = 0; v < nv_; ++v) blossombase_[v] = v;
    blossomendps_.assign(2 * nv_, {});
    bestedge_.assign(2 * nv_, -1);
    blossombestedges_.assign(2 * nv_, {});
    has_bestedges_.assign(2 * nv_, false);
    unusedblossoms_.clear();
    for (int b = 2 * nv_ - 1; b >= nv_; --b) unusedblossoms_.push_back(b);
    dualvar_.assign(2 * nv_, 0);
    for (int v = 0; v < nv_; ++v) dualvar_[v] = maxweight;
    allowedge_.assign(ne, false);
    queue_.clear();

    for (int stage = 0; stage < nv_; ++stage) {
      std::fill(label_.begin(), label_.end(), 0);
      std::fill(bestedge_.begin(), bestedge_.end(), -1);
      for (int b = nv_; b < 2 * nv_; ++b) {
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
      }
      std::fill(allowedge_.begin(), allowedge_.end(), false);
      queue_.clear();

      for (int v = 0; v < nv_; ++v)
        if (mate_[v] == -1 && label_[inblossom_[v]] == 0) assign_label(v, 1, -1);

      bool augmented = false;
      while (true) {
        while (!queue_.empty() && !augmented) {
          const int v = queue_.back();
          queue_.pop_back();
          for (int p : neighbend_[v]) {
            const int k = p / 2;
            const int w = endpoint_[p];
            if (inblossom_[v] == inblossom_[w]) continue;
            std::int64_t kslack = 0;
            if (!allowedge_[k]) {
              kslack = slack(k);
              if (kslack <= 0) allowedge_[k] = true;
            }
            if (allowedge_[k]) {
              if (label_[inblossom_[w]] == 0) {
                assign_label(w, 2, p ^ 1);
              } else if (label_[inblossom_[w]] == 1) {
                const int base = scan_blossom(v, w);
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
              const int b = inblossom_[v];
              if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) bestedge_[b] = k;
            } else if (label_[w] == 0) {
              if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) bestedge_[w] = k;
            }
          }
        }
        if (augmented) break;

        int deltatype = -1;
        std::int64_t delta = 0;
        int deltaedge = -1;
        int deltablossom = -1;
        if (!max_card_) {
          deltatype = 1;
          delta = *std::min_element(dualvar_.begin(), dualvar_.begin() + nv_);
        }
        for (int v = 0; v < nv_; ++v) {
          if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
            const std::int64_t d = slack(bestedge_[v]);
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 2;
              deltaedge = bestedge_[v];
            }
          }
        }
        for (int b = 0; b < 2 * nv_; ++b) {
          if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
            const std::int64_t ks = slack(bestedge_[b]);
            if (ks % 2 != 0) throw std::logic_error("blossom: odd slack between S-blossoms");
            const std::int64_t d = ks / 2;
            if (deltatype == -1 || d < delta) {
              delta = d;
              deltatype = 3;
              deltaedge = bestedge_[b];
            }
          }
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
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
              0, *std::min_element(dualvar_.begin(), dualvar_.begin() + nv_));
        }

        for (int v = 0; v < nv_; ++v) {
          if (label_[inblossom_[v]] == 1)
            dualvar_[v] -= delta;
          else if (label_[inblossom_[v]] == 2)
            dualvar_[v] += delta;
        }
        for (int b = nv_; b < 2 * nv_; ++b) {
          if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
            if (label_[b] == 1)
              dualvar_[b] += delta;
            else if (label_[b] == 2)
              dualvar_[b] -= delta;
          }
        }

        if (deltatype == 1) {
          break;
        } else if (deltatype == 2) {
          allowedge_[deltaedge] = true;
          int i = edges_[deltaedge].a;
          int j = edges_[deltaedge].b;
          if (label_[inblossom_[i]] == 0) std::swap(i, j);
          queue_.push_back(i);
        } else if (deltatype == 3) {
          allowedge_[deltaedge] = true;
          queue_.push_back(edges_[deltaedge].a);
        } else {
          expand_blossom(deltablossom, false);
        }
      }

      if (!augmented) break;

      for (int b = nv_; b < 2 * nv_; ++b) {
        if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 && dualvar_[b] == 0)
          expand_blossom(b, true);
      }
    }

    std::vector<int> result(nv_, -1);
    for (int v = 0; v < nv_; ++v)
      if (mate_[v] >= 0) result[v] = endpoint_[mate_[v]];
    return result;
  }

 private:
  std::int64_t slack(int k) const {
    return dualvar_[edges_[k].a] + dualvar_[edges_[k].b] - 2 * edges_[k].w;
  }

  void blossom_leaves(int b, std::vector<int>& out) const {
    if (b < nv_) {
      out.push_back(b);
      return;
    }
    for (int t : blossomchilds_[b]) blossom_leaves(t, out);
  }

  std::vector<int> leaves(int b) const {
    std::vector<int> out;
    blossom_leaves(b, out);
    return out;
  }

  void assign_label(int w, int t, int p) {
    const int b = inblossom_[w];
    label_[w] = label_[b] = t;
    labelend_[w] = labelend_[b] = p;
    bestedge_[w] = bestedge_[b] = -1;
    if (t == 1) {
      blossom_leaves(b, queue_);
    } else if (t == 2) {
      const int base = blossombase_[b];
      assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
    }
  }

  int scan_blossom(int v, int w) {
    std::vector<int> path;
    int base = -1;
    while (v != -1 || w != -1) {
      int b = inblossom_[v];
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
    for (int b : path) label_[b] = 1;
    return base;
  }

  void add_blossom(int base, int k) {
    int v = edges_[k].a;
    int w = edges_[k].b;
    const int bb = inblossom_[base];
    int bv = inblossom_[v];
    int bw = inblossom_[w];
    const int b = unusedblossoms_.back();
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
    for (int leaf : leaves(b)) {
      if (label_[inblossom_[leaf]] == 2) queue_.push_back(leaf);
      inblossom_[leaf] = b;
    }

    std::vector<int> bestedgeto(2 * nv_, -1);
    for (int child : path) {
      std::vector<std::vector<int>> nblists;
      if (!has_bestedges_[child]) {
        for (int leaf : leaves(child)) {
          std::vector<int> lst;
          for (int p : neighbend_[leaf]) lst.push_back(p / 2);
          nblists.push_back(std::move(lst));
        }
      } else {
        nblists.push_back(blossombestedges_[child]);
      }
      for (const auto& nblist : nblists) {
        for (int kk : nblist) {
          int i = edges_[kk].a;
          int j = edges_[kk].b;
          if (inblossom_[j] == b) std::swap(i, j);
          const int bj = inblossom_[j];
          if (bj != b && label_[bj] == 1 &&
              (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj])))
            bestedgeto[bj] = kk;
        }
      }
      blossombestedges_[child].clear();
      has_bestedges_[child] = false;
      bestedge_[child] = -1;
    }
    blossombestedges_[b].clear();
    for (int kk : bestedgeto)
      if (kk != -1) blossombestedges_[b].push_back(kk);
    has_bestedges_[b] = true;
    bestedge_[b] = -1;
    for (int kk : blossombestedges_[b])
      if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) bestedge_[b] = kk;
  }

  void expand_blossom(int b, bool endstage) {
    const std::vector<int> childs = blossomchilds_[b];
    for (int s : childs) {
      blossomparent_[s] = -1;
      if (s < nv_) {
        inblossom_[s] = s;
      } else if (endstage && dualvar_[s] == 0) {
        expand_blossom(s, endstage);
      } else {
        for (int leaf : leaves(s)) inblossom_[leaf] = s;
      }
    }
    if (!endstage && label_[b] == 2) {
      const int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
      const int len = static_cast<int>(childs.size());
      int j = static_cast<int>(std::find(childs.begin(), childs.end(), entrychild) - childs.begin());
      int jstep;
      int endptrick;
      if (j & 1) {
        j -= len;
        jstep = 1;
        endptrick = 0;
      } else {
        jstep = -1;
        endptrick = 1;
      }
      const auto& endps = blossomendps_[b];
      auto at = [len](const std::vector<int>& v, int idx) { return v[((idx % len) + len) % len]; };
      int p = labelend_[b];
      while (j != 0) {
        label_[endpoint_[p ^ 1]] = 0;
        label_[endpoint_[at(endps, j - endptrick) ^ endptrick ^ 1]] = 0;
        assign_label(endpoint_[p ^ 1], 2, p);
        allowedge_[at(endps, j - endptrick) / 2] = true;
        j += jstep;
        p = at(endps, j - endptrick) ^ endptrick;
        allowedge_[p / 2] = true;
        j += jstep;
      }
      int bv = at(childs, j);
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
        int found = -1;
        for (int leaf : leaves(bv)) {
          if (label_[leaf] != 0) {
            found = leaf;
            break;
          }
        }
        if (found >= 0) {
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
    has_bestedges_[b] = false;
    bestedge_[b] = -1;
    unusedblossoms_.push_back(b);
  }

  void augment_blossom(int b, int v) {
    int t = v;
    while (blossomparent_[t] != b) t = blossomparent_[t];
    if (t >= nv_) augment_blossom(t, v);
    auto& childs = blossomchilds_[b];
    auto& endps = blossomendps_[b];
    const int len = static_cast<int>(childs.size());
    auto at = [len](const std::vector<int>& vec, int idx) { return vec[((idx % len) + len) % len]; };
    const int i = static_cast<int>(std::find(childs.begin(), childs.end(), t) - childs.begin());
    int j = i;
    int jstep;
    int endptrick;
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
      const int p = at(endps, j - endptrick) ^ endptrick;
      if (t >= nv_) augment_blossom(t, endpoint_[p]);
      j += jstep;
      t = at(childs, j);
      if (t >= nv_) augment_blossom(t, endpoint_[p ^ 1]);
      mate_[endpoint_[p]] = p ^ 1;
      mate_[endpoint_[p ^ 1]] = p;
    }
    std::rotate(childs.begin(), childs.begin() + i, childs.end());
    std::rotate(endps.begin(), endps.begin() + i, endps.end());
    blossombase_[b] = blossombase_[childs[0]];
  }

  void augment_matching(int k) {
    const int v = edges_[k].a;
    const int w = edges_[k].b;
    const int starts[2][2] = {{v, 2 * k + 1}, {w, 2 * k}};
    for (const auto& sp : starts) {
      int s = sp[0];
      int p = sp[1];
      while (true) {
        const int bs = inblossom_[s];
        if (bs >= nv_) augment_blossom(bs, s);
        mate_[s] = p;
        if (labelend_[bs] == -1) break;
        const int t = endpoint_[labelend_[bs]];
        const int bt = inblossom_[t];
        s = endpoint_[labelend_[bt]];
        const int j = endpoint_[labelend_[bt] ^ 1];
        if (bt >= nv_) augment_blossom(bt, j);
        mate_[j] = labelend_[bt];
        p = labelend_[bt] ^ 1;
      }
    }
  }

  int nv_;
  const std::vector<IntEdge>& edges_;
  bool max_card_;

  std::vector<int> endpoint_;
  std::vector<std::vector<int>> neighbend_;
  std::vector<int> mate_;
  std::vector<int> label_;
  std::vector<int> labelend_;
  std::vector<int> inblossom_;
  std::vector<int> blossomparent_;
  std::vector<std::vector<int>> blossomchilds_;
  std::vector<int> blossombase_;
  std::vector<std::vector<int>> blossomendps_;
  std::vector<int> bestedge_;
  std::vector<std::vector<int>> blossombestedges_;
  std::vector<bool> has_bestedges_;
  std::vector<int> unusedblossoms_;
  std::vector<std::int64_t> dualvar_;
  std::vector<bool> allowedge_;
  std::vector<int> queue_;
};

}  // namespace confsched::detail

#endif  // CONFSCHED_BLOSSOM_HPP
