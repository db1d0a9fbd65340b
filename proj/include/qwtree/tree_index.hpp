#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwtree/letters.hpp"

namespace qwtree {

// Which rooted tree the walk lives on. SubtreeAB/SubtreeAC are the two
// half-trees hanging off the root word "a"; FullA glues them at the root.
enum class TreeKind { SubtreeAB, SubtreeAC, FullA };

// A vertex is a reduced word starting with 'a'. We store its depth below
// the root together with the branch choices taken on the way down, packed
// little-endian: bit (depth-1-i) is not used -- bit i is the choice made at
// step i+1 (step 1 is the root->child move).
//
// For SubtreeAB/SubtreeAC the first move is forced, so level d >= 1 holds
// 2^(d-1) vertices and only bits 0..d-2 of `index` are meaningful. For FullA
// bit 0 selects the subtree (0 -> "ab", 1 -> "ac") and level d holds 2^d.
struct Vertex {
  int depth = 0;
  std::uint64_t index = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

// Number of vertices at the given depth.
std::uint64_t level_vertex_count(TreeKind kind, int depth);

// Last letter of the reduced word, computed by folding the branch bits.
Letter last_letter(TreeKind kind, const Vertex& v);

// Root vertex of every kind is the word "a".
constexpr Vertex root_vertex() { return Vertex{0, 0}; }

struct MoveResult {
  enum class Kind { Moved, Exit, Outside } kind;
  Vertex target{};  // valid only for Moved
};

// Right-multiply the vertex word by the letter l: either cancels the last
// letter (move to parent; at the root this exits the tree) or appends it
// (move to the child whose last letter is l). Outside = the child exists in
// the full binary tree but not in this kind (only possible at the root of a
// half-tree).
MoveResult move_by_letter(TreeKind kind, const Vertex& v, Letter l);

std::string vertex_word(TreeKind kind, const Vertex& v);
Vertex vertex_from_word(TreeKind kind, const std::string& word);

// Flat level-major addressing for truncated state vectors. The root carries
// a reduced coin block (1 amplitude for half-trees, 2 for FullA); every
// deeper vertex carries a full 3-component coin space.
class LevelLayout {
 public:
  static LevelLayout make(TreeKind kind, int depth_cap);

  // Largest depth_cap accepted by make() for this kind (index-space bound).
  static int max_feasible_depth(TreeKind kind);

  TreeKind kind() const { return kind_; }
  int depth_cap() const { return depth_cap_; }
  std::size_t total_dim() const { return offsets_.back(); }
  std::size_t root_dim() const { return kind_ == TreeKind::FullA ? 2 : 1; }

  std::size_t level_offset(int depth) const { return offsets_[depth]; }
  std::uint64_t level_vertices(int depth) const { return level_vertex_count(kind_, depth); }

  // Flat index of coin component tau at the given vertex (depth >= 1).
  std::size_t slot(int depth, std::uint64_t vertex, Letter tau) const {
    return offsets_[depth] + 3 * vertex + static_cast<std::size_t>(tau);
  }
  // Flat index of a stored root component (0 or, for FullA, 1).
  std::size_t root_slot(std::size_t comp) const { return comp; }

 private:
  TreeKind kind_ = TreeKind::SubtreeAB;
  int depth_cap_ = 0;
  std::vector<std::size_t> offsets_;  // size depth_cap+2; offsets_[d] .. offsets_[d+1]
};

}  // namespace qwtree
