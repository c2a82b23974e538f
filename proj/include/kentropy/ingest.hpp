#pragma once

// Ranking DSL and measurement tables.
//
// Ranking grammar (whitespace allowed around tokens):
//
//     ranking := group ( '>' group )*
//     group   := id ( '~' id )*
//
// `>` separates tiers from most to least preferred; `~` joins tied objects.
//
// Measurement tables are delimiter-separated text with a header row
// `object,<rater1>,<rater2>,...` followed by one row of decimal values per
// object. Rankings files hold one `rater_id: <ranking>` per line. In both
// formats blank lines and lines starting with `#` are ignored; a
// `# units: <text>` line in a table records the units.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kentropy/core_model.hpp"
#include "kentropy/records.hpp"

namespace kentropy {

/// Parses `text` against a known object set; every object must appear once.
WeakOrder parse_ranking(std::string_view text, const ObjectSet& objects);

/// Parses `text`, taking the object set from the ids in order of appearance.
WeakOrder parse_ranking(std::string_view text);

/// Canonical text: tiers joined by " > ", tied objects by " ~ " in base order.
std::string render_ranking(const WeakOrder& w);

/// Canonical text for a partition: classes joined by ", ", members by " ~ ".
std::string render_partition(const Partition& p);
/// Inverse of render_partition. Object set taken in order of appearance.
Partition parse_partition(std::string_view text);

class MeasurementTable {
public:
    /// values[object][rater]. Throws InputError on ragged rows, duplicate ids
    /// or non-finite values.
    MeasurementTable(std::vector<std::string> objects, std::vector<std::string> raters,
                     std::vector<std::vector<double>> values, std::string units = {});

    const std::vector<std::string>& objects() const noexcept { return objects_; }
    const std::vector<std::string>& raters() const noexcept { return raters_; }
    const std::string& units() const noexcept { return units_; }
    double value(std::size_t object, std::size_t rater) const { return values_.at(object).at(rater); }
    /// Column index of `rater`, or nullopt.
    std::optional<std::size_t> rater_index(std::string_view rater) const;

private:
    std::vector<std::string> objects_;
    std::vector<std::string> raters_;
    std::vector<std::vector<double>> values_;
    std::string units_;
};

/// Errors carry "<source_name>:<line>:" context.
MeasurementTable parse_measurement_table(std::string_view text, std::string_view source_name = "<input>");

/// Groups one rater's column into equivalence classes.
///
/// Objects are sorted by value and consecutive objects are chained into one
/// class when their values differ by at most `tolerance`. With tolerance 0
/// this is exact equality of the parsed doubles. A positive tolerance admits
/// a few ulps of slack so that decimal steps such as 63.1 - 62.8 compare
/// equal to 0.3.
Partition group_measurements(const MeasurementTable& table, std::string_view rater, double tolerance);

enum class DatasetFormat { partitions, rankings };

struct LoadOptions {
    double tolerance = 0.0;
    /// Partitions only: keep a single rater column.
    std::optional<std::string> rater;
};

std::vector<RaterRecord> parse_dataset(std::string_view text, DatasetFormat format, const LoadOptions& options = {},
                                       std::string_view source_name = "<input>");

/// Reads `path` and delegates to parse_dataset. Throws InputError when the
/// file cannot be read or holds no records.
std::vector<RaterRecord> load_dataset(const std::filesystem::path& path, DatasetFormat format,
                                      const LoadOptions& options = {});

}  // namespace kentropy
