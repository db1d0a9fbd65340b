#include "doctest.h"
#include "qwtree/tree_index.hpp"

using namespace qwtree;

TEST_CASE("root moves") {
  // On the ab half-tree the root's remaining edge goes to "ab" only.
  auto mv = move_by_letter(TreeKind::SubtreeAB, Vertex{0, 0}, Letter::b);
  CHECK(mv.kind == MoveResult::Kind::Moved);
  CHECK(mv.target.depth == 1);
  mv = move_by_letter(TreeKind::SubtreeAB, Vertex{0, 0}, Letter::c);
  CHECK(mv.kind == MoveResult::Kind::Outside);
  mv = move_by_letter(TreeKind::SubtreeAB, Vertex{0, 0}, Letter::a);
  CHECK(mv.kind == MoveResult::Kind::Exit);
  // The glued tree has both children.
  mv = move_by_letter(TreeKind::FullA, Vertex{0, 0}, Letter::c);
  CHECK(mv.kind == MoveResult::Kind::Moved);
}

TEST_CASE("word round trip") {
  for (TreeKind kind : {TreeKind::SubtreeAB, TreeKind::SubtreeAC, TreeKind::FullA}) {
    const int n = level_vertex_count(kind, 4) > 8 ? 16 : 8;
    for (int i = 0; i < n; ++i) {
      const Vertex v{4, static_cast<std::uint64_t>(i)};
      const std::string w = vertex_word(kind, v);
      REQUIRE(w.size() == 5);
      const Vertex back = vertex_from_word(kind, w);
      CHECK(back == v);
      // Words never repeat a letter consecutively.
      for (std::size_t j = 1; j < w.size(); ++j) CHECK(w[j] != w[j - 1]);
    }
  }
}

TEST_CASE("parent inverts child moves") {
  const TreeKind kind = TreeKind::SubtreeAB;
  const Vertex v{5, 0b10110};
  const Letter last = last_letter(kind, v);
  for (Letter child : {sigma(last), sigma2(last)}) {
    const auto down = move_by_letter(kind, v, child);
    REQUIRE(down.kind == MoveResult::Kind::Moved);
    const Letter child_last = last_letter(kind, down.target);
    const auto up = move_by_letter(kind, down.target, child_last);
    REQUIRE(up.kind == MoveResult::Kind::Moved);
    CHECK(up.target == v);
  }
}

TEST_CASE("level layout slots") {
  const LevelLayout lay = LevelLayout::make(TreeKind::SubtreeAB, 3);
  // Root stores one component; each deeper vertex stores three.
  CHECK(lay.slot(1, 0, Letter::a) > lay.root_slot(0));
  std::size_t expect = 1;  // root
  for (int d = 1; d <= 3; ++d) expect += 3 * level_vertex_count(TreeKind::SubtreeAB, d);
  CHECK(lay.total_dim() == expect);
  CHECK_THROWS_AS(LevelLayout::make(TreeKind::SubtreeAB, 64), std::overflow_error);
}
