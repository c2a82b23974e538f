#include "kentropy/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cfloat>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace kentropy {

namespace {

// ---------------------------------------------------------------------------
// Ranking lexer/parser

enum class TokenKind { id, prefer, tie, end };

struct Token {
    TokenKind kind;
    std::string_view text;
    std::size_t offset;
};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

class Lexer {
public:
    Lexer(std::string_view text, char group_sep, char member_sep)
        : text_(text), group_sep_(group_sep), member_sep_(member_sep) {}

    Token next() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
        if (pos_ == text_.size()) return {TokenKind::end, {}, pos_};
        const char c = text_[pos_];
        if (c == group_sep_) return {TokenKind::prefer, text_.substr(pos_++, 1), pos_ - 1};
        if (c == member_sep_) return {TokenKind::tie, text_.substr(pos_++, 1), pos_ - 1};
        if (c == '>' || c == '~' || c == ',') {
            throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
        }
        const auto start = pos_;
        while (pos_ < text_.size()) {
            const char d = text_[pos_];
            if (is_space(d) || d == '>' || d == '~' || d == ',') break;
            ++pos_;
        }
        return {TokenKind::id, text_.substr(start, pos_ - start), start};
    }

private:
    std::string_view text_;
    char group_sep_;
    char member_sep_;
    std::size_t pos_ = 0;
};

struct RawGroups {
    std::vector<std::vector<Token>> groups;
    std::size_t end_offset = 0;
};

// Splits `text` into groups of ids separated by `group_sep`, members joined
// by `member_sep`. Only syntax is checked here.
RawGroups split_groups(std::string_view text, char group_sep, char member_sep) {
    Lexer lex(text, group_sep, member_sep);
    RawGroups out;
    Token tok = lex.next();
    if (tok.kind == TokenKind::end) {
        throw SyntaxError("empty ranking", tok.offset);
    }
    while (true) {
        if (tok.kind != TokenKind::id) {
            throw SyntaxError("empty group before '" + std::string(tok.text) + "'", tok.offset);
        }
        std::vector<Token> group{tok};
        tok = lex.next();
        while (tok.kind == TokenKind::tie) {
            const auto op = tok;
            tok = lex.next();
            if (tok.kind != TokenKind::id) {
                throw SyntaxError("expected an object after '" + std::string(op.text) + "'", op.offset);
            }
            group.push_back(tok);
            tok = lex.next();
        }
        out.groups.push_back(std::move(group));
        if (tok.kind == TokenKind::end) {
            out.end_offset = tok.offset;
            return out;
        }
        // tok is a group separator
        const auto op = tok;
        tok = lex.next();
        if (tok.kind == TokenKind::end) {
            throw SyntaxError("empty group after '" + std::string(op.text) + "'", op.offset);
        }
    }
}

ObjectSet objects_in_order(const RawGroups& raw) {
    std::vector<ObjectId> ids;
    std::unordered_set<std::string_view> seen;
    for (const auto& g : raw.groups) {
        for (const auto& tok : g) {
            if (!seen.insert(tok.text).second) {
                throw ParseError("duplicate object '" + std::string(tok.text) + "'", tok.offset);
            }
            ids.emplace_back(std::string(tok.text));
        }
    }
    return ObjectSet(std::move(ids));
}

std::vector<std::vector<std::size_t>> resolve(const RawGroups& raw, const ObjectSet& objects) {
    std::vector<bool> seen(objects.size(), false);
    std::vector<std::vector<std::size_t>> groups;
    for (const auto& g : raw.groups) {
        auto& out = groups.emplace_back();
        for (const auto& tok : g) {
            auto i = objects.index_of(tok.text);
            if (i == objects.size()) {
                throw ParseError("unknown object '" + std::string(tok.text) + "'", tok.offset);
            }
            if (seen[i]) {
                throw ParseError("duplicate object '" + std::string(tok.text) + "'", tok.offset);
            }
            seen[i] = true;
            out.push_back(i);
        }
    }
    std::string missing;
    for (std::size_t i = 0; i < objects.size(); ++i) {
        if (!seen[i]) missing += (missing.empty() ? "" : ", ") + objects[i].str();
    }
    if (!missing.empty()) {
        throw ParseError("missing objects: " + missing, raw.end_offset);
    }
    return groups;
}

template <class Groups>
std::string render_groups(const ObjectSet& base, const Groups& groups, std::string_view group_sep,
                          std::string_view member_sep) {
    std::string out;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g) out += group_sep;
        for (std::size_t m = 0; m < groups[g].size(); ++m) {
            if (m) out += member_sep;
            out += base[groups[g][m]].str();
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Line-oriented file helpers

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto end = line.find(delim, start);
        out.push_back(trim(line.substr(start, end == std::string_view::npos ? end : end - start)));
        if (end == std::string_view::npos) break;
        start = end + 1;
    }
    return out;
}

[[noreturn]] void fail_at(std::string_view source, std::size_t line, const std::string& msg) {
    throw InputError(std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

bool is_comment_or_blank(std::string_view line) {
    auto t = trim(line);
    return t.empty() || t.front() == '#';
}

std::vector<RaterRecord> parse_rankings_file(std::string_view text, std::string_view source) {
    std::vector<RaterRecord> records;
    std::optional<ObjectSet> objects;
    std::size_t first_line = 0;
    std::set<std::string> ids;
    const auto lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto line = lines[ln];
        const auto lineno = ln + 1;
        if (is_comment_or_blank(line)) continue;
        const auto colon = line.find(':');
        if (colon == std::string_view::npos) {
            fail_at(source, lineno, "expected '<rater_id>: <ranking>'");
        }
        const std::string rater(trim(line.substr(0, colon)));
        if (rater.empty()) fail_at(source, lineno, "empty rater id");
        if (!ids.insert(rater).second) fail_at(source, lineno, "duplicate rater id '" + rater + "'");

        const auto body = line.substr(colon + 1);
        try {
            WeakOrder w = parse_ranking(body);
            if (!objects) {
                objects = w.base();
                first_line = lineno;
            } else if (!(w.base() == *objects)) {
                std::vector<std::string> mine, theirs;
                for (const auto& m : w.base().members()) mine.push_back(m.str());
                for (const auto& m : objects->members()) theirs.push_back(m.str());
                std::sort(mine.begin(), mine.end());
                std::sort(theirs.begin(), theirs.end());
                if (mine != theirs) {
                    fail_at(source, lineno,
                            "rater '" + rater + "' ranks a different object set than line " +
                                std::to_string(first_line));
                }
                w = parse_ranking(body, *objects);
            }
            records.push_back(make_record(rater, std::move(w)));
        } catch (const ParseError& e) {
            fail_at(source, lineno, "rater '" + rater + "': " + e.what());
        } catch (const ConstructionError& e) {
            fail_at(source, lineno, "rater '" + rater + "': " + e.what());
        } catch (const InputError& e) {
            if (std::string_view(e.what()).starts_with(source)) throw;
            fail_at(source, lineno, "rater '" + rater + "': " + e.what());
        }
    }
    return records;
}

}  // namespace

// ---------------------------------------------------------------------------

WeakOrder parse_ranking(std::string_view text, const ObjectSet& objects) {
    const auto raw = split_groups(text, '>', '~');
    return WeakOrder(objects, resolve(raw, objects));
}

WeakOrder parse_ranking(std::string_view text) {
    const auto raw = split_groups(text, '>', '~');
    auto objects = objects_in_order(raw);
    auto groups = resolve(raw, objects);
    return WeakOrder(std::move(objects), std::move(groups));
}

std::string render_ranking(const WeakOrder& w) { return render_groups(w.base(), w.tiers(), " > ", " ~ "); }

std::string render_partition(const Partition& p) { return render_groups(p.base(), p.classes(), ", ", " ~ "); }

Partition parse_partition(std::string_view text) {
    const auto raw = split_groups(text, ',', '~');
    auto objects = objects_in_order(raw);
    auto groups = resolve(raw, objects);
    return Partition(std::move(objects), std::move(groups));
}

MeasurementTable::MeasurementTable(std::vector<std::string> objects, std::vector<std::string> raters,
                                   std::vector<std::vector<double>> values, std::string units)
    : objects_(std::move(objects)), raters_(std::move(raters)), values_(std::move(values)), units_(std::move(units)) {
    if (raters_.empty()) throw InputError("measurement table has no rater columns");
    if (values_.size() != objects_.size()) throw InputError("measurement table row count mismatch");
    std::unordered_set<std::string> seen;
    for (const auto& o : objects_) {
        if (!ObjectId::is_valid(o)) throw InputError("invalid object id '" + o + "'");
        if (!seen.insert(o).second) throw InputError("duplicate object '" + o + "'");
    }
    seen.clear();
    for (const auto& r : raters_) {
        if (r.empty()) throw InputError("empty rater id");
        if (!seen.insert(r).second) throw InputError("duplicate rater '" + r + "'");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i].size() != raters_.size()) {
            throw InputError("row for '" + objects_[i] + "' has " + std::to_string(values_[i].size()) +
                             " values, expected " + std::to_string(raters_.size()));
        }
        for (double v : values_[i]) {
            if (!std::isfinite(v)) throw InputError("non-finite value in row '" + objects_[i] + "'");
        }
    }
}

std::optional<std::size_t> MeasurementTable::rater_index(std::string_view rater) const {
    auto it = std::find(raters_.begin(), raters_.end(), rater);
    if (it == raters_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - raters_.begin());
}

MeasurementTable parse_measurement_table(std::string_view text, std::string_view source) {
    const auto lines = split_lines(text);
    std::string units;
    std::optional<char> delim;
    std::size_t header_line = 0;
    std::vector<std::string> raters;
    std::vector<std::string> objects;
    std::vector<std::vector<double>> values;
    std::unordered_set<std::string> seen_objects;

    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto lineno = ln + 1;
        const auto t = trim(lines[ln]);
        if (t.empty()) continue;
        if (t.front() == '#') {
            auto body = trim(t.substr(1));
            if (body.starts_with("units:")) units = std::string(trim(body.substr(6)));
            continue;
        }
        if (!delim) {
            delim = t.find(',') != std::string_view::npos ? ',' : '\t';
            auto header = split_fields(t, *delim);
            if (header.size() < 2) fail_at(source, lineno, "header needs 'object' and at least one rater column");
            for (std::size_t c = 1; c < header.size(); ++c) {
                if (header[c].empty()) fail_at(source, lineno, "empty rater name in column " + std::to_string(c + 1));
                if (std::find(raters.begin(), raters.end(), header[c]) != raters.end()) {
                    fail_at(source, lineno, "duplicate rater '" + std::string(header[c]) + "'");
                }
                raters.emplace_back(header[c]);
            }
            header_line = lineno;
            continue;
        }
        auto fields = split_fields(t, *delim);
        if (fields.size() != raters.size() + 1) {
            fail_at(source, lineno,
                    "expected " + std::to_string(raters.size() + 1) + " fields, got " + std::to_string(fields.size()));
        }
        std::string object(fields[0]);
        if (!ObjectId::is_valid(object)) fail_at(source, lineno, "invalid object id '" + object + "'");
        if (!seen_objects.insert(object).second) fail_at(source, lineno, "duplicate object '" + object + "'");
        std::vector<double> row;
        for (std::size_t c = 1; c < fields.size(); ++c) {
            const auto cell = fields[c];
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
                fail_at(source, lineno,
                        "non-numeric value '" + std::string(cell) + "' for object '" + object + "', rater '" +
                            raters[c - 1] + "'");
            }
            row.push_back(v);
        }
        objects.push_back(std::move(object));
        values.push_back(std::move(row));
    }
    if (!delim) throw InputError(std::string(source) + ": no records");
    if (objects.empty()) fail_at(source, header_line, "no records");
    return MeasurementTable(std::move(objects), std::move(raters), std::move(values), std::move(units));
}

Partition group_measurements(const MeasurementTable& table, std::string_view rater, double tolerance) {
    if (!(tolerance >= 0.0) || !std::isfinite(tolerance)) {
        throw DomainError("tolerance must be a finite non-negative number");
    }
    const auto col = table.rater_index(rater);
    if (!col) throw InputError("no rater column '" + std::string(rater) + "'");

    const auto n = table.objects().size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return table.value(a, *col) < table.value(b, *col); });

    auto chained = [&](double lo, double hi) {
        const double diff = hi - lo;
        if (tolerance == 0.0) return diff == 0.0;
        const double scale = std::max({std::abs(lo), std::abs(hi), tolerance});
        return diff <= tolerance + 8.0 * DBL_EPSILON * scale;
    };

    std::vector<Partition::Class> classes;
    for (std::size_t k = 0; k < n; ++k) {
        if (k == 0 || !chained(table.value(order[k - 1], *col), table.value(order[k], *col))) {
            classes.emplace_back();
        }
        classes.back().push_back(order[k]);
    }
    return Partition(ObjectSet::from_names(table.objects()), std::move(classes));
}

std::vector<RaterRecord> parse_dataset(std::string_view text, DatasetFormat format, const LoadOptions& options,
                                       std::string_view source) {
    std::vector<RaterRecord> records;
    if (format == DatasetFormat::rankings) {
        if (options.rater) throw InputError("--rater applies to measurement tables only");
        records = parse_rankings_file(text, source);
    } else {
        const auto table = parse_measurement_table(text, source);
        std::vector<std::string> wanted;
        if (options.rater) {
            if (!table.rater_index(*options.rater)) {
                throw InputError(std::string(source) + ": no rater column '" + *options.rater + "'");
            }
            wanted.push_back(*options.rater);
        } else {
            wanted = table.raters();
        }
        for (const auto& r : wanted) {
            try {
                records.push_back(make_record(r, group_measurements(table, r, options.tolerance)));
            } catch (const ConstructionError& e) {
                throw InputError(std::string(source) + ": " + e.what());
            }
        }
    }
    if (records.empty()) throw InputError(std::string(source) + ": no records");
    return records;
}

std::vector<RaterRecord> load_dataset(const std::filesystem::path& path, DatasetFormat format,
                                      const LoadOptions& options) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str(), format, options, path.string());
}

}  // namespace kentropy
