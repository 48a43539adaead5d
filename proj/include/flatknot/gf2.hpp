#pragma once

#include <cstdint>
#include <vector>

namespace flatknot {

// Dense vector over GF(2).
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int bits) : bits_(bits), w_((bits + 63) / 64, 0) {}

    int size() const { return bits_; }
    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void flip(int i) { w_[i >> 6] ^= (uint64_t{1} << (i & 63)); }
    BitVec& operator^=(const BitVec& o) {
        for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
        return *this;
    }
    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }
    int lowest() const {
        for (size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return static_cast<int>(k * 64 + __builtin_ctzll(w_[k]));
        return -1;
    }
    bool operator==(const BitVec&) const = default;

private:
    int bits_ = 0;
    std::vector<uint64_t> w_;
};

// Incremental row echelon form; each row may carry a tag vector recording
// which inserted generators it combines.
class Echelon {
public:
    // Returns true if v was independent of the rows so far.
    bool insert(BitVec v, BitVec tag = {}) {
        reduce(v, tag);
        int p = v.lowest();
        if (p < 0) return false;
        rows_.push_back({p, std::move(v), std::move(tag)});
        return true;
    }
    // Reduce v (and its tag) against the rows.
    void reduce(BitVec& v, BitVec& tag) const {
        for (const auto& r : rows_)
            if (v.get(r.pivot)) {
                v ^= r.v;
                if (r.tag.size()) tag ^= r.tag;
            }
    }
    void reduce(BitVec& v) const {
        for (const auto& r : rows_)
            if (v.get(r.pivot)) v ^= r.v;
    }
    int rank() const { return static_cast<int>(rows_.size()); }

private:
    struct Row {
        int pivot;
        BitVec v;
        BitVec tag;
    };
    std::vector<Row> rows_;
};

}  // namespace flatknot
