#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"
#include "tuple_codec.hpp"

namespace ualg {

  //! Disjoint-set forest with path halving and union by size.
  class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : _parent(n), _rank(n, 1) {
      std::iota(_parent.begin(), _parent.end(), Elem{0});
    }

    [[nodiscard]] std::size_t size() const noexcept { return _parent.size(); }

    Elem find(Elem x) {
      while (_parent[x] != x) {
        _parent[x] = _parent[_parent[x]];
        x          = _parent[x];
      }
      return x;
    }

    //! Returns true if two distinct blocks were merged.
    bool unite(Elem a, Elem b) {
      a = find(a);
      b = find(b);
      if (a == b) {
        return false;
      }
      if (_rank[a] < _rank[b]) {
        std::swap(a, b);
      }
      _parent[b] = a;
      _rank[a] += _rank[b];
      ++_merges;
      return true;
    }

    [[nodiscard]] std::size_t merges() const noexcept { return _merges; }

   private:
    std::vector<Elem>        _parent;
    std::vector<std::size_t> _rank;
    std::size_t              _merges = 0;
  };

  //! An equivalence relation on {0..n-1}, stored as the least member of the
  //! block of each element. Two partitions are equal iff their arrays are.
  class Partition {
   public:
    Partition() = default;

    //! Builds from arbitrary block labels.
    static Partition from_labels(std::vector<Elem> const& labels) {
      Partition         p;
      std::vector<Elem> least;
      std::size_t       max_label = 0;
      for (Elem l : labels) {
        max_label = std::max<std::size_t>(max_label, l);
      }
      least.assign(max_label + 1, static_cast<Elem>(-1));
      for (Elem x = 0; x < labels.size(); ++x) {
        if (least[labels[x]] == static_cast<Elem>(-1)) {
          least[labels[x]] = x;
        }
      }
      p._cls.resize(labels.size());
      for (Elem x = 0; x < labels.size(); ++x) {
        p._cls[x] = least[labels[x]];
      }
      return p;
    }

    static Partition from_union_find(UnionFind& uf) {
      std::vector<Elem> labels(uf.size());
      for (Elem x = 0; x < labels.size(); ++x) {
        labels[x] = uf.find(x);
      }
      return from_labels(labels);
    }

    static Partition identity(std::size_t n) {
      Partition p;
      p._cls.resize(n);
      std::iota(p._cls.begin(), p._cls.end(), Elem{0});
      return p;
    }

    static Partition full(std::size_t n) {
      Partition p;
      p._cls.assign(n, 0);
      return p;
    }

    //! Builds from explicit blocks; elements not mentioned are singletons.
    static Partition from_blocks(std::size_t n, std::vector<std::vector<Elem>> const& blocks) {
      UnionFind uf(n);
      for (auto const& b : blocks) {
        for (Elem x : b) {
          if (x >= n) {
            throw InputError("partition block element out of range");
          }
          uf.unite(b.front(), x);
        }
      }
      return from_union_find(uf);
    }

    [[nodiscard]] std::size_t universe_size() const noexcept { return _cls.size(); }
    [[nodiscard]] Elem class_of(Elem x) const { return _cls[x]; }
    [[nodiscard]] bool related(Elem a, Elem b) const { return _cls[a] == _cls[b]; }
    [[nodiscard]] std::vector<Elem> const& labels() const noexcept { return _cls; }

    [[nodiscard]] bool is_identity() const {
      for (Elem x = 0; x < _cls.size(); ++x) {
        if (_cls[x] != x) {
          return false;
        }
      }
      return true;
    }

    [[nodiscard]] bool is_full() const {
      return std::all_of(_cls.begin(), _cls.end(), [](Elem c) { return c == 0; });
    }

    [[nodiscard]] std::size_t num_classes() const {
      std::size_t k = 0;
      for (Elem x = 0; x < _cls.size(); ++x) {
        k += (_cls[x] == x);
      }
      return k;
    }

    //! Blocks in order of their least member, each sorted.
    [[nodiscard]] std::vector<std::vector<Elem>> blocks() const {
      std::vector<std::vector<Elem>> out;
      std::vector<std::size_t>       slot(_cls.size(), 0);
      for (Elem x = 0; x < _cls.size(); ++x) {
        if (_cls[x] == x) {
          slot[x] = out.size();
          out.emplace_back();
        }
        out[slot[_cls[x]]].push_back(x);
      }
      return out;
    }

    //! Index of the block of x among blocks(), i.e. the quotient element.
    [[nodiscard]] std::vector<Elem> block_indices() const {
      std::vector<Elem> idx(_cls.size());
      Elem              next = 0;
      std::vector<Elem> of_rep(_cls.size(), 0);
      for (Elem x = 0; x < _cls.size(); ++x) {
        if (_cls[x] == x) {
          of_rep[x] = next++;
        }
        idx[x] = of_rep[_cls[x]];
      }
      return idx;
    }

    //! this ⊆ other as relations.
    [[nodiscard]] bool leq(Partition const& other) const {
      for (Elem x = 0; x < _cls.size(); ++x) {
        if (!other.related(x, _cls[x])) {
          return false;
        }
      }
      return true;
    }

    [[nodiscard]] Partition meet(Partition const& other) const {
      // Pair of labels identifies the intersection block.
      std::vector<Elem> labels(_cls.size());
      std::size_t const n = _cls.size();
      std::vector<std::size_t> keys(n);
      for (Elem x = 0; x < n; ++x) {
        keys[x] = static_cast<std::size_t>(_cls[x]) * n + other._cls[x];
      }
      std::vector<std::size_t> sorted = keys;
      std::sort(sorted.begin(), sorted.end());
      sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
      for (Elem x = 0; x < n; ++x) {
        labels[x] = static_cast<Elem>(
            std::lower_bound(sorted.begin(), sorted.end(), keys[x]) - sorted.begin());
      }
      return from_labels(labels);
    }

    //! Join in the lattice of equivalence relations.
    [[nodiscard]] Partition join(Partition const& other) const {
      UnionFind uf(_cls.size());
      for (Elem x = 0; x < _cls.size(); ++x) {
        uf.unite(x, _cls[x]);
        uf.unite(x, other._cls[x]);
      }
      return from_union_find(uf);
    }

    [[nodiscard]] std::string to_string() const {
      std::string s;
      for (auto const& b : blocks()) {
        s += '{';
        for (std::size_t i = 0; i < b.size(); ++i) {
          if (i > 0) {
            s += ',';
          }
          s += std::to_string(b[i]);
        }
        s += '}';
      }
      return s;
    }

    auto operator<=>(Partition const&) const = default;
    bool operator==(Partition const&) const  = default;

   private:
    std::vector<Elem> _cls;
  };

  //! A congruence is represented by its partition; compatibility is
  //! established by whoever constructs it (see congruence.hpp).
  using Congruence = Partition;

}  // namespace ualg
