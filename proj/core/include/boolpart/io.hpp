#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "boolpart/exact_cover.hpp"
#include "boolpart/general.hpp"
#include "boolpart/lattice_partition.hpp"
#include "boolpart/oracle.hpp"
#include "boolpart/poset.hpp"
#include "boolpart/product.hpp"
#include "boolpart/weak_certificate.hpp"

// Every artifact is one JSON object with "format": 1 and a "kind" field.
// Keys are sorted, scalars and short values stay on the key's line, arrays of
// objects or arrays get one element per line, big integers are strings.
// Loading raises ParseError (with "line N" or the missing field's name) and
// ReferenceError for undefined ids.
namespace boolpart::io {

inline constexpr int kFormatVersion = 1;

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);
std::string sha256_hex(std::string_view data);

/// The "kind" field of an artifact.
std::string peek_kind(std::string_view text);

std::string save_poset(const Poset& poset);
Poset load_poset(std::string_view text);

std::string save_weak_certificate(const WeakCertificate& cert);
WeakCertificate load_weak_certificate(std::string_view text);

std::string save_instance(const ProductInstance& inst);
ProductInstance load_instance(std::string_view text);

/// Boxes, tiles and the member table are written sorted.
std::string save_certificate(const PartitionCertificate& cert);
PartitionCertificate load_certificate(std::string_view text);

std::string save_lattice_partition(const LatticePartition& p);
LatticePartition load_lattice_partition(std::string_view text);

/// Stage certificates are referenced by file name and digest.
std::string save_general_plan(const GeneralResult& result, const std::vector<std::string>& stage_files,
                              const std::vector<std::string>& stage_digests, const RunManifest& manifest);

std::string save_weak_search(const ProductInstance& inst, const WeakSearchResult& result, const RunManifest& manifest);

std::string save_cover_result(const LatticeSearchResult& result, const Poset& poset, int n, const RunManifest& manifest);

}  // namespace boolpart::io
