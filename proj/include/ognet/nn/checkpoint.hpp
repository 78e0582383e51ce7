#pragma once

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ognet/core/errors.hpp"
#include "ognet/core/sha256.hpp"
#include "ognet/nn/model_state.hpp"

namespace ognet {

// Checkpoint archive: one directory per snapshot holding a human-readable
// manifest (arch, provenance, parameter table, payload hash) and the raw
// little-endian parameter payload. Loading verifies the hash, so a round
// trip is bit-exact or it throws.

inline constexpr int kCheckpointFormatVersion = 1;
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kPayloadFile = "params.bin";

template <typename T>
void save_checkpoint(const std::filesystem::path& dir, const ModelStateT<T>& m) {
    static_assert(sizeof(T) == 8, "checkpoint payload is float64");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create checkpoint dir " + dir.string() + ": " + ec.message());

    const auto payload = parameter_payload(m);

    nlohmann::json params = nlohmann::json::array();
    for (const auto& p : m.params)
        params.push_back({{"name", p.name}, {"shape", p.value.shape()}, {"dtype", "f64"}});

    const nlohmann::json manifest = {
        {"format_version", kCheckpointFormatVersion},
        {"name", m.name},
        {"role", to_string(m.role)},
        {"arch", m.arch.to_json()},
        {"provenance",
         {{"phase", to_string(m.provenance.phase)}, {"epoch", m.provenance.epoch}, {"iteration", m.provenance.iteration}}},
        {"params", params},
        {"sha256", sha256_hex(std::span<const std::uint8_t>(payload))},
    };

    {
        std::ofstream out(dir / kManifestFile);
        if (!out) throw IoError("cannot write " + (dir / kManifestFile).string());
        out << manifest.dump(2) << "\n";
        if (!out) throw IoError("short write: " + (dir / kManifestFile).string());
    }
    {
        std::ofstream out(dir / kPayloadFile, std::ios::binary);
        if (!out) throw IoError("cannot write " + (dir / kPayloadFile).string());
        out.write(reinterpret_cast<const char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
        if (!out) throw IoError("short write: " + (dir / kPayloadFile).string());
    }
}

template <typename T = double>
ModelStateT<T> load_checkpoint(const std::filesystem::path& dir) {
    static_assert(sizeof(T) == 8, "checkpoint payload is float64");
    std::ifstream min(dir / kManifestFile);
    if (!min) throw IoError("cannot open " + (dir / kManifestFile).string());
    nlohmann::json manifest;
    try {
        min >> manifest;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("bad checkpoint manifest " + (dir / kManifestFile).string() + ": " + e.what());
    }
    if (manifest.at("format_version").get<int>() != kCheckpointFormatVersion)
        throw IoError("unsupported checkpoint format version in " + dir.string());

    ModelStateT<T> m;
    m.name = manifest.at("name").get<std::string>();
    m.role = role_from_string(manifest.at("role").get<std::string>());
    m.arch = ArchitectureSpec::from_json(manifest.at("arch"));
    const auto& prov = manifest.at("provenance");
    m.provenance.phase = phase_from_string(prov.at("phase").get<std::string>());
    m.provenance.epoch = prov.at("epoch").get<int>();
    m.provenance.iteration = prov.at("iteration").get<int>();

    std::ifstream pin(dir / kPayloadFile, std::ios::binary);
    if (!pin) throw IoError("cannot open " + (dir / kPayloadFile).string());
    std::vector<std::uint8_t> payload((std::istreambuf_iterator<char>(pin)), std::istreambuf_iterator<char>());

    const auto expected_hash = manifest.at("sha256").get<std::string>();
    if (sha256_hex(std::span<const std::uint8_t>(payload)) != expected_hash)
        throw IoError("checkpoint payload hash mismatch in " + dir.string());

    std::size_t off = 0;
    for (const auto& pj : manifest.at("params")) {
        if (pj.at("dtype").get<std::string>() != "f64")
            throw IoError("unsupported parameter dtype in " + dir.string());
        NamedParam<T> p;
        p.name = pj.at("name").get<std::string>();
        p.value = Tensor<T>(pj.at("shape").get<std::vector<std::size_t>>());
        const std::size_t nbytes = p.value.size() * sizeof(T);
        if (off + nbytes > payload.size()) throw IoError("checkpoint payload too short in " + dir.string());
        std::memcpy(p.value.data(), payload.data() + off, nbytes);
        off += nbytes;
        m.params.push_back(std::move(p));
    }
    if (off != payload.size()) throw IoError("checkpoint payload too long in " + dir.string());
    return m;
}

} // namespace ognet
