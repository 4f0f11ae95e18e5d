#include "alphafuse/nn/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "alphafuse/common/errors.hpp"

namespace alphafuse::nn {

namespace {

template <class T>
void put_le(std::string& out, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
public:
    explicit Reader(const std::string& bytes) : bytes_(bytes) {}

    template <class T>
    T get_le() {
        need(sizeof(T));
        T v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            v |= static_cast<T>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        }
        pos_ += sizeof(T);
        return v;
    }

    std::string get_bytes(std::size_t n) {
        need(n);
        std::string s = bytes_.substr(pos_, n);
        pos_ += n;
        return s;
    }

    bool done() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t n) const {
        if (pos_ + n > bytes_.size()) throw ValidationError("checkpoint truncated at byte " + std::to_string(pos_));
    }
    const std::string& bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string serialize_checkpoint(const ParameterSet& params) {
    std::string out(kCheckpointMagic, sizeof(kCheckpointMagic));
    put_le<std::uint32_t>(out, kCheckpointVersion);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
    for (const auto& [name, p] : params) {
        put_le<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
        out += name;
        put_le<std::uint32_t>(out, 2);
        put_le<std::uint64_t>(out, p.value.rows());
        put_le<std::uint64_t>(out, p.value.cols());
        for (double v : p.value.values()) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
    }
    return out;
}

ParameterSet deserialize_checkpoint(const std::string& bytes) {
    Reader in(bytes);
    if (in.get_bytes(sizeof(kCheckpointMagic)) != std::string(kCheckpointMagic, sizeof(kCheckpointMagic))) {
        throw ValidationError("not a checkpoint: bad magic");
    }
    const auto version = in.get_le<std::uint32_t>();
    if (version != kCheckpointVersion) {
        throw ValidationError("unsupported checkpoint version " + std::to_string(version));
    }
    const auto count = in.get_le<std::uint32_t>();
    ParameterSet params;
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::string name = in.get_bytes(in.get_le<std::uint32_t>());
        const auto rank = in.get_le<std::uint32_t>();
        std::vector<std::uint64_t> dims(rank);
        std::uint64_t n = 1;
        for (auto& d : dims) {
            d = in.get_le<std::uint64_t>();
            n *= d;
        }
        std::vector<double> values(n);
        for (auto& v : values) v = std::bit_cast<double>(in.get_le<std::uint64_t>());
        std::size_t rows = 1, cols = 1;
        if (rank == 1) {
            cols = dims[0];
        } else if (rank == 2) {
            rows = dims[0];
            cols = dims[1];
        } else if (rank != 0) {
            throw ValidationError("parameter '" + name + "' has unsupported rank " + std::to_string(rank));
        }
        params.add(name, Tensor(rows, cols, std::move(values)));
    }
    if (!in.done()) throw ValidationError("trailing bytes after checkpoint records");
    return params;
}

void save_checkpoint(const std::string& path, const ParameterSet& params) {
    const std::string bytes = serialize_checkpoint(params);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for '" + path + "'");
}

ParameterSet load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize_checkpoint(bytes);
}

}  // namespace alphafuse::nn
