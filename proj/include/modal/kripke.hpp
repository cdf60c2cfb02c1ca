#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "modal/formula.hpp"

namespace modal {

/// The six frame classes between K and KTB ordered by the properties they
/// impose: serial (KD), reflexive (T), symmetric (KB), and combinations.
enum class FrameClass { K, KD, T, KB, KDB, KTB };

std::string to_string(FrameClass c);
/// Case-insensitive; accepts K, KD, T, KB, KDB, KTB.
FrameClass parse_frame_class(std::string_view name);

/// Finite frame: worlds 0..n-1 (n >= 1) and an accessibility relation kept
/// sorted and duplicate-free.
class Frame {
 public:
  Frame(int world_count, std::vector<std::pair<int, int>> relation);

  int world_count() const { return n_; }
  const std::vector<std::pair<int, int>>& relation() const { return rel_; }
  const std::vector<int>& successors(int world) const;
  bool has_edge(int from, int to) const;

  bool is_reflexive() const;
  bool is_symmetric() const;
  bool is_serial() const;

  bool operator==(const Frame& other) const {
    return n_ == other.n_ && rel_ == other.rel_;
  }

 private:
  int n_;
  std::vector<std::pair<int, int>> rel_;
  std::vector<std::vector<int>> succ_;
};

bool is_in_class(const Frame& frame, FrameClass c);
Frame reflexive_closure(const Frame& frame);
Frame symmetric_closure(const Frame& frame);

/// Frame plus a valuation. Variables not mentioned are false everywhere.
class Model {
 public:
  Model(Frame frame, const std::map<int, std::vector<int>>& valuation);

  const Frame& frame() const { return frame_; }
  bool holds(int var_index, int world) const;

  /// Canonical view: variables with non-empty extensions, worlds ascending.
  std::map<int, std::vector<int>> valuation() const;

  /// Copy of this model with the extension of one variable replaced.
  Model with_valuation(int var_index, const std::vector<int>& worlds) const;

  bool operator==(const Model& other) const {
    return frame_ == other.frame_ && valuation() == other.valuation();
  }

 private:
  Frame frame_;
  std::map<int, std::vector<bool>> val_;
};

/// Truth set of f: one flag per world. Shared subterms are evaluated once.
std::vector<bool> truth_set(const Model& model, const Formula& f);
bool model_check(const Model& model, int world, const Formula& f);

/// Places the models side by side; returns the union and the offset of each
/// block (offsets[i] is the new index of world 0 of models[i]).
std::pair<Model, std::vector<int>> disjoint_union(const std::vector<Model>& models);

/// Model file format: line-oriented, 0-based worlds, '#' starts a comment
/// line.  Directives: "worlds <n>" (first), "rel <i> <j>", "val p<k> <w>...".
/// No closure is applied on load; the relation is exactly what is listed.
Model parse_model(std::string_view text);
std::string format_model(const Model& model);

}  // namespace modal
