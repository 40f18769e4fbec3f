#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace moodcast {

struct SongEntry {
  std::string id;
  std::string title;
  double valence = 0.5;     // [0,1]
  double energy = 0.5;      // [0,1]
  double popularity = 0.0;  // [0,100]

  bool operator==(const SongEntry&) const = default;
};

nlohmann::json to_json(const SongEntry& s);

/// Loads a catalog from a JSON array of SongEntry objects or a CSV file with
/// header id,title,valence,energy,popularity. The format is chosen by file
/// extension (.json / .csv), falling back to sniffing the first byte.
/// Entries keep file order. Throws NotFoundError for a missing file and
/// ValidationError naming the 1-based row for any invalid entry.
std::vector<SongEntry> load_song_catalog(const std::filesystem::path& path);

std::vector<SongEntry> parse_song_catalog_json(std::string_view text);
std::vector<SongEntry> parse_song_catalog_csv(std::string_view text);

const SongEntry* find_song(const std::vector<SongEntry>& catalog, std::string_view id);

}  // namespace moodcast
