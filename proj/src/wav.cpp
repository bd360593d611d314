#include "wearauth/wav.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "wearauth/errors.hpp"

namespace wearauth {

namespace {

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 24) & 0xff));
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
}

}  // namespace

WavData read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError("not a RIFF WAV file: " + path);
  }

  int channels = 0;
  int sample_rate = 0;
  int bits = 0;
  int format = 0;
  const uint8_t* data = nullptr;
  size_t data_len = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    uint32_t chunk_len = read_u32(bytes.data() + pos + 4);
    const uint8_t* body = bytes.data() + pos + 8;
    if (pos + 8 + chunk_len > bytes.size()) {
      chunk_len = static_cast<uint32_t>(bytes.size() - pos - 8);
    }
    if (std::memcmp(bytes.data() + pos, "fmt ", 4) == 0 && chunk_len >= 16) {
      format = read_u16(body);
      channels = read_u16(body + 2);
      sample_rate = static_cast<int>(read_u32(body + 4));
      bits = read_u16(body + 14);
    } else if (std::memcmp(bytes.data() + pos, "data", 4) == 0) {
      data = body;
      data_len = chunk_len;
    }
    pos += 8 + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (format != 1 || bits != 16) {
    throw DataError("unsupported codec in " + path +
                    " (expected PCM 16-bit, got format=" + std::to_string(format) +
                    " bits=" + std::to_string(bits) + ")");
  }
  if (channels != 1 && channels != 2) {
    throw DataError("unsupported channel count " + std::to_string(channels) +
                    " in " + path);
  }
  if (data == nullptr || data_len < 2) throw DataError("zero-length audio: " + path);
  if (sample_rate <= 0) throw DataError("bad sample rate in " + path);

  size_t frames = data_len / (2 * static_cast<size_t>(channels));
  if (frames == 0) throw DataError("zero-length audio: " + path);

  WavData wav;
  wav.sample_rate = sample_rate;
  wav.samples.resize(static_cast<Eigen::Index>(frames));
  for (size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    for (int c = 0; c < channels; ++c) {
      const uint8_t* p = data + 2 * (f * static_cast<size_t>(channels) + static_cast<size_t>(c));
      int16_t s = static_cast<int16_t>(p[0] | (p[1] << 8));
      acc += static_cast<double>(s);
    }
    wav.samples[static_cast<Eigen::Index>(f)] = acc / (channels * 32768.0);
  }
  return wav;
}

void write_wav(const std::string& path, const Eigen::VectorXd& samples,
               int sample_rate) {
  if (samples.size() == 0) throw DataError("refusing to write zero-length audio: " + path);
  const uint32_t n = static_cast<uint32_t>(samples.size());
  std::vector<uint8_t> out;
  out.reserve(44 + 2 * n);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + 2 * n);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<uint32_t>(sample_rate));
  put_u32(out, static_cast<uint32_t>(sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, 2 * n);
  for (Eigen::Index i = 0; i < samples.size(); ++i) {
    double v = std::round(samples[i] * 32768.0);
    if (v > 32767.0) v = 32767.0;
    if (v < -32768.0) v = -32768.0;
    put_u16(out, static_cast<uint16_t>(static_cast<int16_t>(v)));
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write file: " + path);
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
}

}  // namespace wearauth
