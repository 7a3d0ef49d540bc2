#include "circex/fixture.hpp"

#include "circex/errors.hpp"
#include "circex/text.hpp"

#include <charconv>
#include <fstream>

namespace circex {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    cells.push_back(current);
    return cells;
}

std::optional<double> parse_optional_double(std::string_view cell, const std::string& where) {
    cell = text::trim(cell);
    if (cell.empty()) return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw DataError("fixture " + where + ": \"" + std::string(cell) + "\" is not a number");
    }
    return value;
}

std::optional<long long> parse_optional_int(std::string_view cell, const std::string& where) {
    cell = text::trim(cell);
    if (cell.empty()) return std::nullopt;
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw DataError("fixture " + where + ": \"" + std::string(cell) + "\" is not an integer");
    }
    return value;
}

} // namespace

std::vector<FixtureRow> load_fixture_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("file-missing: cannot open fixture " + path.string());

    std::vector<FixtureRow> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto trimmed = text::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (trimmed.find("circumstance_id") != std::string_view::npos) continue;
            // fall through: headerless files start with data
        }
        const std::string where = path.filename().string() + " line " + std::to_string(line_no);
        const auto cells = split_csv(std::string(trimmed));
        if (cells.size() != 8) {
            throw DataError("fixture " + where + ": expected 8 columns, found " +
                            std::to_string(cells.size()));
        }
        FixtureRow row;
        row.circumstance_id = text::trim(cells[0]);
        if (row.circumstance_id.empty()) {
            throw DataError("fixture " + where + ": empty circumstance_id");
        }
        const auto score = parse_optional_int(cells[1], where);
        if (!score) throw DataError("fixture " + where + ": score is required");
        row.score = static_cast<int>(*score);
        row.training_count = parse_optional_int(cells[2], where);
        row.f1_roberta = parse_optional_double(cells[3], where);
        const auto f1_simple = parse_optional_double(cells[4], where);
        const auto f1_complex = parse_optional_double(cells[5], where);
        if (!f1_simple || !f1_complex) {
            throw DataError("fixture " + where + ": f1_simple and f1_complex are required");
        }
        row.f1_simple = *f1_simple;
        row.f1_complex = *f1_complex;
        row.f1_gemini = parse_optional_double(cells[6], where);
        row.f1_llama = parse_optional_double(cells[7], where);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw DataError("fixture " + path.string() + " carries no data rows");
    return rows;
}

std::vector<StrategyInput> to_strategy_inputs(const std::vector<FixtureRow>& rows) {
    std::vector<StrategyInput> inputs;
    inputs.reserve(rows.size());
    for (const auto& row : rows) {
        inputs.push_back({row.circumstance_id, row.score, row.f1_simple, row.f1_complex});
    }
    return inputs;
}

std::vector<BracketInput> to_bracket_inputs(const std::vector<FixtureRow>& rows, int threshold) {
    std::vector<BracketInput> inputs;
    inputs.reserve(rows.size());
    for (const auto& row : rows) {
        BracketInput input;
        input.circumstance_id = row.circumstance_id;
        input.training_count = row.training_count;
        input.hybrid_f1 = select_strategy(row.score, threshold) == PromptStrategy::Complex
                              ? row.f1_complex
                              : row.f1_simple;
        input.baseline_f1 = row.f1_roberta;
        inputs.push_back(std::move(input));
    }
    return inputs;
}

} // namespace circex
