#include "ldh/stack_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

namespace ldh {

namespace {

// The container is little-endian by definition; this code assumes a
// little-endian host (checked once at read/write time via a runtime probe).
bool host_is_little_endian() {
    const std::uint32_t probe = 1;
    unsigned char byte;
    std::memcpy(&byte, &probe, 1);
    return byte == 1;
}

void require_little_endian() {
    if (!host_is_little_endian())
        throw FormatError("stack container requires a little-endian host");
}

}  // namespace

HologramStack<float> read_stack(const std::string& path) {
    require_little_endian();
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw FormatError("cannot open stack '" + path + "'");
    const std::uint64_t file_bytes = static_cast<std::uint64_t>(in.tellg());
    in.seekg(0);

    char header[kStackHeaderBytes];
    if (file_bytes < kStackHeaderBytes || !in.read(header, kStackHeaderBytes))
        throw FormatError("'" + path + "': truncated header (expected " +
                          std::to_string(kStackHeaderBytes) + " bytes)");
    if (std::memcmp(header, kStackMagic, 4) != 0)
        throw FormatError("'" + path + "': bad magic at byte offset 0 (expected \"LDH1\")");

    std::uint32_t nx, ny, nt;
    float fs;
    std::memcpy(&nx, header + 4, 4);
    std::memcpy(&ny, header + 8, 4);
    std::memcpy(&nt, header + 12, 4);
    std::memcpy(&fs, header + 16, 4);
    if (nx == 0 || ny == 0 || nt == 0 || !(fs > 0.0f) || !std::isfinite(fs))
        throw FormatError("'" + path + "': invalid header values (nx=" + std::to_string(nx) +
                          " ny=" + std::to_string(ny) + " nt=" + std::to_string(nt) +
                          " fs=" + std::to_string(fs) + ")");

    const std::uint64_t samples = static_cast<std::uint64_t>(nx) * ny * nt;
    const std::uint64_t expected = kStackHeaderBytes + samples * 8;
    if (file_bytes != expected)
        throw FormatError("'" + path + "': payload length mismatch, expected " +
                          std::to_string(expected) + " bytes, got " + std::to_string(file_bytes));

    HologramStack<float> stack;
    stack.nx = static_cast<Index>(nx);
    stack.ny = static_cast<Index>(ny);
    stack.nt = static_cast<Index>(nt);
    stack.fs = static_cast<double>(fs);
    stack.frames.resize(stack.pixels(), stack.nt);
    static_assert(sizeof(std::complex<float>) == 8, "interleaved f32 layout");
    if (!in.read(reinterpret_cast<char*>(stack.frames.data()),
                 static_cast<std::streamsize>(samples * 8)))
        throw FormatError("'" + path + "': short payload read");

    const std::complex<float>* data = stack.frames.data();
    for (std::uint64_t i = 0; i < samples; ++i) {
        if (!std::isfinite(data[i].real()) || !std::isfinite(data[i].imag()))
            throw FormatError("'" + path + "': non-finite sample at byte offset " +
                              std::to_string(kStackHeaderBytes + i * 8));
    }
    return stack;
}

void write_stack(const HologramStack<float>& stack, const std::string& path) {
    require_little_endian();
    validate(stack);
    if (stack.nx > std::numeric_limits<std::uint32_t>::max() ||
        stack.ny > std::numeric_limits<std::uint32_t>::max() ||
        stack.nt > std::numeric_limits<std::uint32_t>::max())
        throw InvalidInput("stack dimensions exceed the container's u32 header");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");

    char header[kStackHeaderBytes];
    std::memcpy(header, kStackMagic, 4);
    const std::uint32_t nx = static_cast<std::uint32_t>(stack.nx);
    const std::uint32_t ny = static_cast<std::uint32_t>(stack.ny);
    const std::uint32_t nt = static_cast<std::uint32_t>(stack.nt);
    const float fs = static_cast<float>(stack.fs);
    std::memcpy(header + 4, &nx, 4);
    std::memcpy(header + 8, &ny, 4);
    std::memcpy(header + 12, &nt, 4);
    std::memcpy(header + 16, &fs, 4);
    out.write(header, kStackHeaderBytes);

    out.write(reinterpret_cast<const char*>(stack.frames.data()),
              static_cast<std::streamsize>(static_cast<std::uint64_t>(stack.frames.size()) * 8));
    if (!out) throw FormatError("short write to '" + path + "'");
}

}  // namespace ldh
