#include "modal/kripke.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace modal {

std::string to_string(FrameClass c) {
  switch (c) {
    case FrameClass::K:
      return "K";
    case FrameClass::KD:
      return "KD";
    case FrameClass::T:
      return "T";
    case FrameClass::KB:
      return "KB";
    case FrameClass::KDB:
      return "KDB";
    case FrameClass::KTB:
      return "KTB";
  }
  throw std::logic_error("to_string: bad frame class");
}

FrameClass parse_frame_class(std::string_view name) {
  std::string upper;
  upper.reserve(name.size());
  for (char ch : name) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (upper == "K") return FrameClass::K;
  if (upper == "KD") return FrameClass::KD;
  if (upper == "T") return FrameClass::T;
  if (upper == "KB") return FrameClass::KB;
  if (upper == "KDB") return FrameClass::KDB;
  if (upper == "KTB") return FrameClass::KTB;
  throw std::invalid_argument("unknown frame class '" + std::string(name) +
                              "' (expected K, KD, T, KB, KDB or KTB)");
}

Frame::Frame(int world_count, std::vector<std::pair<int, int>> relation)
    : n_(world_count), rel_(std::move(relation)) {
  if (n_ < 1) throw std::invalid_argument("frame needs at least one world");
  for (auto [i, j] : rel_) {
    if (i < 0 || i >= n_ || j < 0 || j >= n_)
      throw std::invalid_argument("relation pair out of range");
  }
  std::sort(rel_.begin(), rel_.end());
  rel_.erase(std::unique(rel_.begin(), rel_.end()), rel_.end());
  succ_.assign(n_, {});
  for (auto [i, j] : rel_) succ_[i].push_back(j);
}

const std::vector<int>& Frame::successors(int world) const {
  if (world < 0 || world >= n_) throw std::invalid_argument("world out of range");
  return succ_[world];
}

bool Frame::has_edge(int from, int to) const {
  return std::binary_search(rel_.begin(), rel_.end(), std::make_pair(from, to));
}

bool Frame::is_reflexive() const {
  for (int w = 0; w < n_; ++w)
    if (!has_edge(w, w)) return false;
  return true;
}

bool Frame::is_symmetric() const {
  for (auto [i, j] : rel_)
    if (!has_edge(j, i)) return false;
  return true;
}

bool Frame::is_serial() const {
  for (int w = 0; w < n_; ++w)
    if (succ_[w].empty()) return false;
  return true;
}

bool is_in_class(const Frame& frame, FrameClass c) {
  switch (c) {
    case FrameClass::K:
      return true;
    case FrameClass::KD:
      return frame.is_serial();
    case FrameClass::T:
      return frame.is_reflexive();
    case FrameClass::KB:
      return frame.is_symmetric();
    case FrameClass::KDB:
      return frame.is_serial() && frame.is_symmetric();
    case FrameClass::KTB:
      return frame.is_reflexive() && frame.is_symmetric();
  }
  throw std::logic_error("is_in_class: bad frame class");
}

Frame reflexive_closure(const Frame& frame) {
  std::vector<std::pair<int, int>> rel = frame.relation();
  for (int w = 0; w < frame.world_count(); ++w) rel.emplace_back(w, w);
  return Frame(frame.world_count(), std::move(rel));
}

Frame symmetric_closure(const Frame& frame) {
  std::vector<std::pair<int, int>> rel = frame.relation();
  for (auto [i, j] : frame.relation()) rel.emplace_back(j, i);
  return Frame(frame.world_count(), std::move(rel));
}

Model::Model(Frame frame, const std::map<int, std::vector<int>>& valuation)
    : frame_(std::move(frame)) {
  for (const auto& [var, worlds] : valuation) {
    if (var < 1) throw std::invalid_argument("variable index must be >= 1");
    std::vector<bool> mask(frame_.world_count(), false);
    for (int w : worlds) {
      if (w < 0 || w >= frame_.world_count())
        throw std::invalid_argument("valuation world out of range");
      mask[w] = true;
    }
    val_.emplace(var, std::move(mask));
  }
}

bool Model::holds(int var_index, int world) const {
  if (world < 0 || world >= frame_.world_count())
    throw std::invalid_argument("world out of range");
  auto it = val_.find(var_index);
  return it != val_.end() && it->second[world];
}

std::map<int, std::vector<int>> Model::valuation() const {
  std::map<int, std::vector<int>> out;
  for (const auto& [var, mask] : val_) {
    std::vector<int> worlds;
    for (int w = 0; w < frame_.world_count(); ++w)
      if (mask[w]) worlds.push_back(w);
    if (!worlds.empty()) out.emplace(var, std::move(worlds));
  }
  return out;
}

Model Model::with_valuation(int var_index, const std::vector<int>& worlds) const {
  auto val = valuation();
  val[var_index] = worlds;
  return Model(frame_, val);
}

namespace {

std::vector<bool> eval_rec(const Model& model, const Formula& f,
                           std::unordered_map<const Formula::Node*, std::vector<bool>>& memo) {
  auto it = memo.find(f.raw());
  if (it != memo.end()) return it->second;
  const int n = model.frame().world_count();
  std::vector<bool> out(n, false);
  switch (f.kind()) {
    case Kind::Var:
      for (int w = 0; w < n; ++w) out[w] = model.holds(f.var_index(), w);
      break;
    case Kind::Falsum:
      break;
    case Kind::Top:
      out.assign(n, true);
      break;
    case Kind::Not: {
      auto a = eval_rec(model, f.child(0), memo);
      for (int w = 0; w < n; ++w) out[w] = !a[w];
      break;
    }
    case Kind::Implies: {
      auto a = eval_rec(model, f.child(0), memo);
      auto b = eval_rec(model, f.child(1), memo);
      for (int w = 0; w < n; ++w) out[w] = !a[w] || b[w];
      break;
    }
    case Kind::And: {
      out.assign(n, true);
      for (const Formula& c : f.children()) {
        auto a = eval_rec(model, c, memo);
        for (int w = 0; w < n; ++w) out[w] = out[w] && a[w];
      }
      break;
    }
    case Kind::Or: {
      for (const Formula& c : f.children()) {
        auto a = eval_rec(model, c, memo);
        for (int w = 0; w < n; ++w) out[w] = out[w] || a[w];
      }
      break;
    }
    case Kind::Box: {
      auto a = eval_rec(model, f.child(0), memo);
      for (int w = 0; w < n; ++w) {
        bool all = true;
        for (int v : model.frame().successors(w)) {
          if (!a[v]) {
            all = false;
            break;
          }
        }
        out[w] = all;
      }
      break;
    }
    case Kind::Diamond: {
      auto a = eval_rec(model, f.child(0), memo);
      for (int w = 0; w < n; ++w) {
        bool some = false;
        for (int v : model.frame().successors(w)) {
          if (a[v]) {
            some = true;
            break;
          }
        }
        out[w] = some;
      }
      break;
    }
  }
  memo.emplace(f.raw(), out);
  return out;
}

}  // namespace

std::vector<bool> truth_set(const Model& model, const Formula& f) {
  std::unordered_map<const Formula::Node*, std::vector<bool>> memo;
  return eval_rec(model, f, memo);
}

bool model_check(const Model& model, int world, const Formula& f) {
  if (world < 0 || world >= model.frame().world_count())
    throw std::invalid_argument("world out of range");
  return truth_set(model, f)[world];
}

std::pair<Model, std::vector<int>> disjoint_union(const std::vector<Model>& models) {
  if (models.empty()) throw std::invalid_argument("disjoint_union of no models");
  std::vector<int> offsets;
  offsets.reserve(models.size());
  int total = 0;
  for (const Model& m : models) {
    offsets.push_back(total);
    total += m.frame().world_count();
  }
  std::vector<std::pair<int, int>> rel;
  std::map<int, std::vector<int>> val;
  for (std::size_t b = 0; b < models.size(); ++b) {
    const int off = offsets[b];
    for (auto [i, j] : models[b].frame().relation()) rel.emplace_back(i + off, j + off);
    for (const auto& [var, worlds] : models[b].valuation())
      for (int w : worlds) val[var].push_back(w + off);
  }
  return {Model(Frame(total, std::move(rel)), val), offsets};
}

namespace {

[[noreturn]] void model_fail(int line, const std::string& message) {
  throw ParseError("model file line " + std::to_string(line) + ": " + message, 0);
}

}  // namespace

Model parse_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_worlds = false;
  int n = 0;
  std::vector<std::pair<int, int>> rel;
  std::map<int, std::vector<int>> val;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;  // blank line
    if (head[0] == '#') continue;
    if (head == "worlds") {
      if (have_worlds) model_fail(line_no, "duplicate worlds directive");
      if (!(ls >> n) || n < 1) model_fail(line_no, "worlds needs a positive count");
      have_worlds = true;
    } else if (head == "rel") {
      if (!have_worlds) model_fail(line_no, "rel before worlds");
      int i, j;
      if (!(ls >> i >> j)) model_fail(line_no, "rel needs two world indices");
      if (i < 0 || i >= n || j < 0 || j >= n) model_fail(line_no, "rel index out of range");
      rel.emplace_back(i, j);
    } else if (head == "val") {
      if (!have_worlds) model_fail(line_no, "val before worlds");
      std::string var_tok;
      if (!(ls >> var_tok) || var_tok.size() < 2 || var_tok[0] != 'p')
        model_fail(line_no, "val needs a variable token p<k>");
      int var = 0;
      for (std::size_t i = 1; i < var_tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(var_tok[i])))
          model_fail(line_no, "val needs a variable token p<k>");
        var = var * 10 + (var_tok[i] - '0');
        if (var > 1000000000) model_fail(line_no, "variable index too large");
      }
      if (var < 1) model_fail(line_no, "variable index must be >= 1");
      int w;
      auto& worlds = val[var];
      while (ls >> w) {
        if (w < 0 || w >= n) model_fail(line_no, "val world out of range");
        worlds.push_back(w);
      }
      if (!ls.eof()) model_fail(line_no, "val worlds must be integers");
    } else {
      model_fail(line_no, "unknown directive '" + head + "'");
    }
  }
  if (!have_worlds) model_fail(line_no, "missing worlds directive");
  return Model(Frame(n, std::move(rel)), val);
}

std::string format_model(const Model& model) {
  std::string out = "worlds " + std::to_string(model.frame().world_count()) + "\n";
  for (auto [i, j] : model.frame().relation())
    out += "rel " + std::to_string(i) + " " + std::to_string(j) + "\n";
  for (const auto& [var, worlds] : model.valuation()) {
    out += "val p" + std::to_string(var);
    for (int w : worlds) out += " " + std::to_string(w);
    out += "\n";
  }
  return out;
}

}  // namespace modal
