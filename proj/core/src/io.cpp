#include "tbtlrr/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tbtlrr {

namespace {

constexpr std::array<char, 4> kMagic = {'T', '3', 'B', '1'};

static_assert(std::endian::native == std::endian::little,
              "T3B I/O assumes a little-endian host");

std::uint32_t read_u32(std::istream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

}  // namespace

Tensor3 read_t3b(std::istream& in) {
    std::array<char, 4> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) {
        throw std::runtime_error("read_t3b: bad magic bytes (not a T3B file)");
    }
    const std::uint32_t n1 = read_u32(in);
    const std::uint32_t n2 = read_u32(in);
    const std::uint32_t n3 = read_u32(in);
    if (!in) {
        throw std::runtime_error("read_t3b: truncated header");
    }
    const std::uint64_t count = static_cast<std::uint64_t>(n1) * n2 * n3;
    std::vector<double> data(count);
    in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(count * sizeof(double)));
    if (static_cast<std::uint64_t>(in.gcount()) != count * sizeof(double)) {
        throw std::runtime_error("read_t3b: truncated payload");
    }
    return Tensor3::from_data(static_cast<int>(n1), static_cast<int>(n2), static_cast<int>(n3), std::move(data));
}

Tensor3 read_t3b(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("read_t3b: cannot open " + path.string());
    }
    return read_t3b(in);
}

void write_t3b(std::ostream& out, const Tensor3& t) {
    out.write(kMagic.data(), kMagic.size());
    const std::array<std::uint32_t, 3> dims = {static_cast<std::uint32_t>(t.n1()),
                                               static_cast<std::uint32_t>(t.n2()),
                                               static_cast<std::uint32_t>(t.n3())};
    out.write(reinterpret_cast<const char*>(dims.data()), sizeof(dims));
    out.write(reinterpret_cast<const char*>(t.data().data()),
              static_cast<std::streamsize>(t.data().size() * sizeof(double)));
    if (!out) {
        throw std::runtime_error("write_t3b: write failed");
    }
}

void write_t3b(const std::filesystem::path& path, const Tensor3& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_t3b: cannot open " + path.string());
    }
    write_t3b(out, t);
}

std::vector<int> read_labels_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("read_labels_csv: cannot open " + path.string());
    }
    std::vector<int> labels;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::size_t pos = 0;
        const int v = std::stoi(line, &pos);
        labels.push_back(v);
    }
    return labels;
}

void write_labels_csv(const std::filesystem::path& path, const std::vector<int>& labels) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("write_labels_csv: cannot open " + path.string());
    }
    for (int v : labels) {
        out << v << '\n';
    }
}

}  // namespace tbtlrr
