#include "outspace/fold.hpp"

#include <algorithm>
#include <unordered_map>

#include "outspace/error.hpp"

namespace outspace {

std::optional<int> FoldedGraph::step(int v, int label) const {
  const auto& st = star_[v];
  auto it = std::lower_bound(st.begin(), st.end(), std::make_pair(label, INT32_MIN));
  if (it == st.end() || it->first != label) return std::nullopt;
  return it->second;
}

int FoldedGraph::endpoint(int se) const {
  const auto& e = edges[std::abs(se) - 1];
  return se > 0 ? e.to : e.from;
}

void FoldedGraph::build_star() {
  star_.assign(vertex_image.size(), {});
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    star_[edges[i].from].emplace_back(edges[i].label, i + 1);
    star_[edges[i].to].emplace_back(-edges[i].label, -(i + 1));
  }
  for (auto& st : star_) std::sort(st.begin(), st.end());
}

int FoldGraph::add_vertex(int image) {
  vs_.push_back(V{{}, image, true});
  return static_cast<int>(vs_.size()) - 1;
}

int FoldGraph::add_edge(int from, int to, int label, const Word& track) {
  int id = static_cast<int>(es_.size());
  es_.push_back(E{from, to, label, track.empty() ? Word(track_rank_) : track, true});
  vs_[from].ends.push_back(2 * id);
  vs_[to].ends.push_back(2 * id + 1);
  return id;
}

int FoldGraph::end_label(int end) const {
  const E& e = es_[end / 2];
  return end % 2 == 0 ? e.label : -e.label;
}

int FoldGraph::end_other(int end) const {
  const E& e = es_[end / 2];
  return end % 2 == 0 ? e.to : e.from;
}

Word FoldGraph::end_track(int end) const {
  const E& e = es_[end / 2];
  return end % 2 == 0 ? e.track : e.track.inverse();
}

void FoldGraph::gauge(int x, const Word& g) {
  if (g.empty()) return;
  Word gi = g.inverse();
  for (int end : vs_[x].ends) {
    E& e = es_[end / 2];
    if (!e.alive) continue;
    if (end % 2 == 0)
      e.track = g * e.track;
    else
      e.track = e.track * gi;
  }
  if (x == base_) base_conj_ = base_conj_ * gi;
}

void FoldGraph::merge(int keep, int gone) {
  V& g = vs_[gone];
  V& k = vs_[keep];
  if (g.image >= 0 && k.image >= 0 && g.image != k.image) violated("fold identified vertices over different images");
  if (k.image < 0) k.image = g.image;
  for (int end : g.ends) {
    E& e = es_[end / 2];
    if (!e.alive) continue;
    if (end % 2 == 0)
      e.from = keep;
    else
      e.to = keep;
    k.ends.push_back(end);
  }
  g.ends.clear();
  g.alive = false;
  if (base_ == gone) base_ = keep;
}

FoldedGraph FoldGraph::fold() && {
  const bool tracking = track_rank_ > 0;
  std::vector<int> work;
  for (int v = static_cast<int>(vs_.size()) - 1; v >= 0; --v) work.push_back(v);
  std::unordered_map<int, int> seen;
  while (!work.empty()) {
    int v = work.back();
    work.pop_back();
    if (!vs_[v].alive) continue;
    auto& ends = vs_[v].ends;
    std::erase_if(ends, [&](int end) { return !es_[end / 2].alive; });
    seen.clear();
    for (int end : ends) {
      auto [it, fresh] = seen.emplace(end_label(end), end);
      if (fresh) continue;
      int end1 = it->second, end2 = end;
      int x1 = end_other(end1), x2 = end_other(end2);
      if (x1 != x2) {
        if (tracking) {
          Word t1 = end_track(end1), t2 = end_track(end2);
          if (x2 != v)
            gauge(x2, t1.inverse() * t2);
          else
            gauge(x1, t2.inverse() * t1);
        }
        es_[end2 / 2].alive = false;
        merge(x1, x2);
      } else {
        if (tracking && !(end_track(end1) == end_track(end2))) injective_ = false;
        es_[end2 / 2].alive = false;
      }
      work.push_back(x1);
      work.push_back(v);
      break;
    }
  }

  FoldedGraph out;
  std::vector<int> id(vs_.size(), -1);
  for (std::size_t v = 0; v < vs_.size(); ++v)
    if (vs_[v].alive) {
      id[v] = static_cast<int>(out.vertex_image.size());
      out.vertex_image.push_back(vs_[v].image);
    }
  for (const E& e : es_)
    if (e.alive) out.edges.push_back({id[e.from], id[e.to], e.label, e.track});
  out.base = base_ >= 0 ? id[base_] : -1;
  out.base_conj = base_conj_;
  out.injective = injective_;
  out.build_star();
  return out;
}

}  // namespace outspace
