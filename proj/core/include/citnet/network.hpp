#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace citnet {

// Origin of a patent in a combined two-domain model. Plain networks use None.
enum class DomainTag : std::uint8_t { None, A, B, Merged };

const char* to_string(DomainTag tag);

struct PatentRecord {
  std::string id;
  int year = 0;
  DomainTag domain_tag = DomainTag::None;
};

// Knowledge flows cited -> citing: the forward citations of v are the
// edges v -> w, i.e. the later patents building on v.
struct CitationEdge {
  std::string cited;
  std::string citing;
};

struct BuildStats {
  std::int64_t dropped_year_order = 0;  // ingest: citing year < cited year
  std::int64_t dropped_cycle = 0;       // ingest: same-year edge closing a cycle
  std::int64_t deduped = 0;             // ingest: repeated (cited, citing) pairs
};

// Immutable directed acyclic citation graph. Nodes are canonically ordered
// by ascending id, so node indices and id order coincide and two builds
// from the same records are structurally identical.
class CitationNetwork {
 public:
  enum class BuildMode { Strict, Ingest };

  // Strict mode enforces year(citing) > year(cited) and rejects duplicate
  // edges. Ingest mode drops year-order violations and deduplicates,
  // keeps same-year edges only while they stay acyclic, and reports the
  // drop counts through `stats`.
  static CitationNetwork build(std::vector<PatentRecord> nodes,
                               std::vector<CitationEdge> edges, BuildMode mode,
                               BuildStats* stats = nullptr);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  std::int64_t edge_count() const { return edge_count_; }
  const PatentRecord& node(int v) const { return nodes_[static_cast<std::size_t>(v)]; }
  std::span<const PatentRecord> nodes() const { return nodes_; }

  std::optional<int> index_of(std::string_view id) const;

  // Later patents citing v (cited -> citing adjacency).
  std::span<const int> forward(int v) const { return at(forward_, v); }
  // Earlier patents cited by v.
  std::span<const int> backward(int v) const { return at(backward_, v); }

  int fwdcit(int v) const { return static_cast<int>(forward(v).size()); }
  int bwdcit(int v) const { return static_cast<int>(backward(v).size()); }

  int min_year() const { return min_year_; }
  int max_year() const { return max_year_; }

  // Cited nodes precede citing nodes; ties broken by ascending year then
  // ascending id.
  std::vector<int> topological_order() const;

  // Longest-path-from-roots layering: roots get 1, otherwise
  // 1 + max over cited nodes' layers.
  std::vector<int> assign_layers() const;

  // Edges sorted by (cited id, citing id), for export.
  std::vector<CitationEdge> edge_list() const;

 private:
  std::span<const int> at(const std::vector<std::vector<int>>& adj, int v) const {
    return adj[static_cast<std::size_t>(v)];
  }

  std::vector<PatentRecord> nodes_;  // sorted by id
  std::vector<std::vector<int>> forward_;
  std::vector<std::vector<int>> backward_;
  std::int64_t edge_count_ = 0;
  int min_year_ = 0;
  int max_year_ = 0;
};

}  // namespace citnet
