#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <utility>
#include <vector>

namespace ualg::detail {

  inline std::uint64_t hash_bytes(std::uint8_t const* p, std::size_t len) {
    std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ len;
    std::size_t   i = 0;
    for (; i + 8 <= len; i += 8) {
      std::uint64_t w;
      std::memcpy(&w, p + i, 8);
      h ^= w;
      h *= 0xBF58476D1CE4E5B9ULL;
      h ^= h >> 31;
    }
    std::uint64_t tail = 0;
    std::memcpy(&tail, p + i, len - i);
    h ^= tail;
    h *= 0x94D049BB133111EBULL;
    h ^= h >> 29;
    return h;
  }

  //! Interning table for byte vectors of one fixed length. Ids are dense and
  //! assigned in insertion order.
  class VectorPool {
   public:
    explicit VectorPool(std::size_t length) : _len(length) { _slots.assign(64, kEmpty); }

    [[nodiscard]] std::size_t length() const noexcept { return _len; }
    [[nodiscard]] std::size_t size() const noexcept { return _count; }

    [[nodiscard]] std::uint8_t const* data(std::size_t id) const {
      return _data.data() + id * _len;
    }
    [[nodiscard]] std::span<std::uint8_t const> get(std::size_t id) const {
      return {data(id), _len};
    }

    //! Returns (id, inserted).
    std::pair<std::size_t, bool> insert(std::uint8_t const* v) {
      if ((_count + 1) * 2 > _slots.size()) {
        grow();
      }
      std::uint64_t const h    = hash_bytes(v, _len);
      std::size_t const   mask = _slots.size() - 1;
      std::size_t         i    = h & mask;
      while (_slots[i] != kEmpty) {
        std::size_t const id = _slots[i];
        if (_hashes[id] == h && std::memcmp(data(id), v, _len) == 0) {
          return {id, false};
        }
        i = (i + 1) & mask;
      }
      std::size_t const id = _count++;
      _slots[i]            = id;
      _hashes.push_back(h);
      _data.insert(_data.end(), v, v + _len);
      return {id, true};
    }

    [[nodiscard]] std::size_t find(std::uint8_t const* v) const {
      std::uint64_t const h    = hash_bytes(v, _len);
      std::size_t const   mask = _slots.size() - 1;
      std::size_t         i    = h & mask;
      while (_slots[i] != kEmpty) {
        std::size_t const id = _slots[i];
        if (_hashes[id] == h && std::memcmp(data(id), v, _len) == 0) {
          return id;
        }
        i = (i + 1) & mask;
      }
      return npos;
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

   private:
    static constexpr std::size_t kEmpty = static_cast<std::size_t>(-1);

    void grow() {
      std::vector<std::size_t> fresh(_slots.size() * 2, kEmpty);
      std::size_t const        mask = fresh.size() - 1;
      for (std::size_t id = 0; id < _count; ++id) {
        std::size_t i = _hashes[id] & mask;
        while (fresh[i] != kEmpty) {
          i = (i + 1) & mask;
        }
        fresh[i] = id;
      }
      _slots.swap(fresh);
    }

    std::size_t                _len;
    std::size_t                _count = 0;
    std::vector<std::uint8_t>  _data;
    std::vector<std::uint64_t> _hashes;
    std::vector<std::size_t>   _slots;
  };

}  // namespace ualg::detail
