// Copyright 2026 The qconf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCONF_REFERENCE_TABLES_HPP
#define QCONF_REFERENCE_TABLES_HPP

// Published outcome tables, transcribed by hand, and the code that recomputes
// every cell from the Born rule.
//
// Each row is written as a digit string over the outcome columns in code order
// (Phi_0^+, Phi_0^-, Phi_1^+, ...). A '1' stands for 1/denominator and a '0'
// for an empty cell. Row labels name the prepared product state: "010" is
// |0>|1>|0>, "+-+" is |+>|->|+>.

#include <string>
#include <vector>

#include "qconf/adversary.hpp"
#include "qconf/codec.hpp"
#include "qconf/qsim.hpp"
#include "qconf/stats.hpp"

namespace qconf {

enum class TableKind : std::uint8_t {
    born,       // honest joint measurement of the prepared product state
    dishonest,  // dishonest middle announcement given single-qubit results
    guess,      // two-party decoding: digits are the guessed partner bits
};

struct TableRow {
    std::string label;
    std::string digits;
};

struct ReferenceTable {
    std::string name;
    TableKind kind;
    std::size_t parties;
    double denominator;
    std::vector<TableRow> rows;
};

inline const std::vector<ReferenceTable> &reference_tables() {
    static const std::vector<ReferenceTable> tables{
        {"mdi",
         TableKind::born,
         2,
         2,
         {{"00", "1100"},
          {"01", "0011"},
          {"10", "0011"},
          {"11", "1100"},
          {"++", "1010"},
          {"+-", "0101"},
          {"-+", "0101"},
          {"--", "1010"}}},
        // Forwarded states after a wrong-basis interception of |0>|0>.
        {"mdi_intercept", TableKind::born, 2, 2, {{"++", "1010"}, {"+-", "0101"}, {"-+", "0101"}, {"--", "1010"}}},
        // Rows "k a": the guessed partner bit for each Bell outcome.
        {"mdi_guess", TableKind::guess, 2, 1, {{"00", "0011"}, {"01", "1100"}, {"10", "0101"}, {"11", "1010"}}},
        {"conference3_z",
         TableKind::born,
         3,
         2,
         {{"000", "11000000"},
          {"001", "00110000"},
          {"010", "00001100"},
          {"011", "00000011"},
          {"100", "00000011"},
          {"101", "00001100"},
          {"110", "00110000"},
          {"111", "11000000"}}},
        {"conference3_x",
         TableKind::born,
         3,
         4,
         {{"+++", "10101010"},
          {"++-", "01010101"},
          {"+-+", "01010101"},
          {"+--", "10101010"},
          {"-++", "01010101"},
          {"-+-", "10101010"},
          {"--+", "10101010"},
          {"---", "01010101"}}},
        {"dishonest_middle3_z",
         TableKind::dishonest,
         3,
         2,
         {{"000", "11000000"},
          {"001", "00110000"},
          {"010", "00001100"},
          {"011", "00000011"},
          {"100", "00000011"},
          {"101", "00001100"},
          {"110", "00110000"},
          {"111", "11000000"}}},
        {"dishonest_middle3_x",
         TableKind::dishonest,
         3,
         4,
         {{"+++", "10101010"},
          {"++-", "01010101"},
          {"+-+", "01010101"},
          {"+--", "10101010"},
          {"-++", "01010101"},
          {"-+-", "10101010"},
          {"--+", "10101010"},
          {"---", "01010101"}}},
        {"conference4_z",
         TableKind::born,
         4,
         2,
         {{"0000", "1100000000000000"},
          {"0001", "0011000000000000"},
          {"0010", "0000110000000000"},
          {"0011", "0000001100000000"},
          {"0100", "0000000011000000"},
          {"0101", "0000000000110000"},
          {"0110", "0000000000001100"},
          {"0111", "0000000000000011"},
          {"1000", "0000000000000011"},
          {"1001", "0000000000001100"},
          {"1010", "0000000000110000"},
          {"1011", "0000000011000000"},
          {"1100", "0000001100000000"},
          {"1101", "0000110000000000"},
          {"1110", "0011000000000000"},
          {"1111", "1100000000000000"}}},
        {"conference4_x",
         TableKind::born,
         4,
         8,
         {{"++++", "1010101010101010"},
          {"+++-", "0101010101010101"},
          {"++-+", "0101010101010101"},
          {"++--", "1010101010101010"},
          {"+-++", "0101010101010101"},
          {"+-+-", "1010101010101010"},
          {"+--+", "1010101010101010"},
          {"+---", "0101010101010101"},
          {"-+++", "0101010101010101"},
          {"-++-", "1010101010101010"},
          {"-+-+", "1010101010101010"},
          {"-+--", "0101010101010101"},
          {"--++", "1010101010101010"},
          {"--+-", "0101010101010101"},
          {"---+", "0101010101010101"},
          {"----", "1010101010101010"}}},
    };
    return tables;
}

/// Parses a row label into per-qubit specs.
inline std::vector<QubitSpec> parse_row_label(const std::string &label) {
    std::vector<QubitSpec> out;
    for (char ch : label) {
        switch (ch) {
            case '0':
                out.push_back({Basis::Z, 0});
                break;
            case '1':
                out.push_back({Basis::Z, 1});
                break;
            case '+':
                out.push_back({Basis::X, 0});
                break;
            case '-':
                out.push_back({Basis::X, 1});
                break;
            default:
                throw ContractError("parse_row_label: bad character in " + label);
        }
    }
    return out;
}

/// The row recomputed from first principles, one value per column.
inline std::vector<double> recompute_row(const ReferenceTable &table, const TableRow &row) {
    auto specs = parse_row_label(row.label);
    if (table.kind == TableKind::guess) {
        // label = key bit, own bit
        std::vector<double> out;
        for (std::uint32_t code = 0; code < 4; code++) {
            out.push_back(decode_two_party(specs[1].bit, specs[0].bit, Outcome::from_code(code)));
        }
        return out;
    }
    if (table.kind == TableKind::dishonest) {
        Bits bits;
        for (const auto &s : specs) {
            bits.push_back(s.bit);
        }
        return dishonest_announcement_distribution(bits, specs.front().basis);
    }
    std::vector<PureState> parts;
    for (const auto &s : specs) {
        parts.push_back(materialize(s));
    }
    return outcome_distribution(tensor(parts), JointBasis(table.parties));
}

inline std::string column_label(std::size_t parties, std::uint32_t code) {
    Outcome o = Outcome::from_code(code);
    if (parties == 2) {
        static const char *bell[] = {"Phi+", "Phi-", "Psi+", "Psi-"};
        return bell[code];
    }
    return o.to_string();
}

/// One comparison per cell. Blank cells must come out below 1e-12.
inline std::vector<Comparison> verify_tables() {
    std::vector<Comparison> out;
    for (const auto &table : reference_tables()) {
        for (const auto &row : table.rows) {
            auto computed = recompute_row(table, row);
            if (computed.size() != row.digits.size()) {
                throw ContractError("verify_tables: column count mismatch in " + table.name + " row " + row.label);
            }
            for (std::size_t col = 0; col < computed.size(); col++) {
                double expected = table.kind == TableKind::guess
                                      ? static_cast<double>(row.digits[col] - '0')
                                      : (row.digits[col] == '1' ? 1.0 / table.denominator : 0.0);
                Estimate e{"table." + table.name + "." + row.label + "." +
                               column_label(table.parties, static_cast<std::uint32_t>(col)),
                           computed[col], 0.0, 1, 0};
                out.push_back(check_agreement(e, expected, 0.0));
            }
        }
    }
    return out;
}

}  // namespace qconf

#endif  // QCONF_REFERENCE_TABLES_HPP
