#include "qwtree/tree_index.hpp"

#include <stdexcept>

namespace qwtree {

std::uint64_t level_vertex_count(TreeKind kind, int depth) {
  if (depth == 0) return 1;
  const int branch_bits = (kind == TreeKind::FullA) ? depth : depth - 1;
  return std::uint64_t{1} << branch_bits;
}

// Letter of the root's child selected by bit0 (FullA) or by the kind.
static Letter first_child_letter(TreeKind kind, std::uint64_t index_bit0) {
  switch (kind) {
    case TreeKind::SubtreeAB: return Letter::b;
    case TreeKind::SubtreeAC: return Letter::c;
    case TreeKind::FullA: return (index_bit0 & 1) ? Letter::c : Letter::b;
  }
  throw std::logic_error("unreachable");
}

Letter last_letter(TreeKind kind, const Vertex& v) {
  if (v.depth == 0) return Letter::a;
  Letter l = first_child_letter(kind, v.index >> (v.depth - 1));
  // Remaining branch bits, outermost first: bit (depth-2) down to bit 0.
  // (For FullA the subtree-selection bit was consumed above; for half-trees
  // that bit position is always zero.)
  for (int i = v.depth - 2; i >= 0; --i) {
    const bool bit = (v.index >> i) & 1;
    l = bit ? sigma2(l) : sigma(l);
  }
  return l;
}

MoveResult move_by_letter(TreeKind kind, const Vertex& v, Letter l) {
  const Letter last = last_letter(kind, v);
  if (l == last) {
    if (v.depth == 0) return {MoveResult::Kind::Exit, {}};
    return {MoveResult::Kind::Moved, Vertex{v.depth - 1, v.index >> 1}};
  }
  if (v.depth == 0) {
    // Children of the root word "a": sigma(a)=b -> "ab", sigma2(a)=c -> "ac".
    switch (kind) {
      case TreeKind::SubtreeAB:
        if (l != Letter::b) return {MoveResult::Kind::Outside, {}};
        return {MoveResult::Kind::Moved, Vertex{1, 0}};
      case TreeKind::SubtreeAC:
        if (l != Letter::c) return {MoveResult::Kind::Outside, {}};
        return {MoveResult::Kind::Moved, Vertex{1, 0}};
      case TreeKind::FullA:
        return {MoveResult::Kind::Moved, Vertex{1, (l == Letter::c) ? 1u : 0u}};
    }
  }
  // l != last at depth >= 1: append. The two children carry letters
  // sigma(last) (bit 0) and sigma2(last) (bit 1).
  const std::uint64_t bit = (l == sigma2(last)) ? 1 : 0;
  return {MoveResult::Kind::Moved, Vertex{v.depth + 1, (v.index << 1) | bit}};
}

std::string vertex_word(TreeKind kind, const Vertex& v) {
  std::string w = "a";
  Vertex cur = root_vertex();
  for (int step = 0; step < v.depth; ++step) {
    const int bitpos = v.depth - 1 - step;
    std::uint64_t bit = (v.index >> bitpos) & 1;
    Letter next;
    if (step == 0) {
      next = first_child_letter(kind, kind == TreeKind::FullA ? bit : 0);
    } else {
      const Letter cur_last = last_letter(kind, cur);
      next = bit ? sigma2(cur_last) : sigma(cur_last);
    }
    w.push_back(letter_char(next));
    auto mv = move_by_letter(kind, cur, next);
    cur = mv.target;
  }
  return w;
}

Vertex vertex_from_word(TreeKind kind, const std::string& word) {
  if (word.empty() || word[0] != 'a')
    throw std::invalid_argument("vertex word must start with 'a': " + word);
  Vertex cur = root_vertex();
  for (std::size_t i = 1; i < word.size(); ++i) {
    const Letter l = letter_from_char(word[i]);
    if (l == last_letter(kind, cur))
      throw std::invalid_argument("word is not reduced: " + word);
    auto mv = move_by_letter(kind, cur, l);
    if (mv.kind != MoveResult::Kind::Moved)
      throw std::invalid_argument("word leaves the tree: " + word);
    cur = mv.target;
  }
  return cur;
}

int LevelLayout::max_feasible_depth(TreeKind kind) {
  // Keep the flat index (3 * 2^branch_bits per level, summed) well inside
  // std::size_t; 2^57 amplitudes is already far beyond any physical memory.
  return kind == TreeKind::FullA ? 56 : 57;
}

LevelLayout LevelLayout::make(TreeKind kind, int depth_cap) {
  if (depth_cap < 0) throw std::invalid_argument("depth_cap must be >= 0");
  if (depth_cap > max_feasible_depth(kind))
    throw std::overflow_error("depth_cap " + std::to_string(depth_cap) +
                              " overflows the index space; max feasible depth is " +
                              std::to_string(max_feasible_depth(kind)));
  LevelLayout lay;
  lay.kind_ = kind;
  lay.depth_cap_ = depth_cap;
  lay.offsets_.resize(depth_cap + 2);
  lay.offsets_[0] = 0;
  std::size_t off = lay.root_dim();
  lay.offsets_[1] = off;
  for (int d = 1; d <= depth_cap; ++d) {
    off += 3 * static_cast<std::size_t>(level_vertex_count(kind, d));
    lay.offsets_[d + 1] = off;
  }
  return lay;
}

}  // namespace qwtree
