#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace mincomm {

/// Packs a tuple of per-agent indices into a single integer using a
/// mixed-radix code. Agent 0 occupies the least-significant digit, so
/// iterating the packed index enumerates agent-0 components fastest.
class MixedRadixCodec {
  public:
    MixedRadixCodec() = default;

    explicit MixedRadixCodec(std::vector<int> radices) : radices_(std::move(radices)) {
        strides_.resize(radices_.size());
        std::int64_t stride = 1;
        for (std::size_t i = 0; i < radices_.size(); ++i) {
            if (radices_[i] <= 0) throw std::invalid_argument("MixedRadixCodec: radix must be positive");
            strides_[i] = stride;
            stride *= radices_[i];
        }
        size_ = stride;
    }

    std::int64_t size() const { return size_; }
    int digits() const { return static_cast<int>(radices_.size()); }
    int radix(int i) const { return radices_[i]; }

    std::int64_t encode(const std::vector<int>& parts) const {
        std::int64_t packed = 0;
        for (std::size_t i = 0; i < radices_.size(); ++i) {
            if (parts[i] < 0 || parts[i] >= radices_[i])
                throw std::out_of_range("MixedRadixCodec::encode: digit out of range");
            packed += strides_[i] * parts[i];
        }
        return packed;
    }

    std::vector<int> decode(std::int64_t packed) const {
        if (packed < 0 || packed >= size_) throw std::out_of_range("MixedRadixCodec::decode: index out of range");
        std::vector<int> parts(radices_.size());
        for (std::size_t i = 0; i < radices_.size(); ++i) {
            parts[i] = static_cast<int>(packed / strides_[i] % radices_[i]);
        }
        return parts;
    }

    /// Extracts a single digit without materializing the full tuple.
    int component(std::int64_t packed, int i) const {
        return static_cast<int>(packed / strides_[i] % radices_[i]);
    }

  private:
    std::vector<int> radices_;
    std::vector<std::int64_t> strides_;
    std::int64_t size_ = 1;
};

} // namespace mincomm
