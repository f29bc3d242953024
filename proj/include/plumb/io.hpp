#pragma once
// Line-oriented file formats and their parsers/serializers.
//
// All formats share the same lexical layer: one record per line, fields
// separated by blanks, `#` starting a comment, blank lines ignored, ids
// matching [A-Za-z0-9_]+.  Parse errors carry the 1-based line and column
// of the offending token.
//
//   graph          vertex <id> <framing> [genus] | edge <id> <id>
//                  | arrow <id> <multiplicity>
//   moves          bu_v <id> | bu_e <id> <id> | bd <id>
//                  (ids created by blowups are assigned at replay time)
//   divisor        coeff <id> <integer>
//   embedding      mode s|p, then per vertex:  <id> : [+ <k>] [- <k1> <k2> ...]
//                  with 1-based basis indices
//   factorization  page disk|sphere | hole <id> | orbit <id> <hole ids...>
//                  | cycle <id> [hole ids...] | interchange <hole> <hole>
//
// Serializers write canonical text: parse(emit(parse(t))) == parse(t).

#include <plumb/embedding.hpp>
#include <plumb/graph.hpp>
#include <plumb/moves.hpp>
#include <plumb/nlf.hpp>

#include <string>

namespace plumb {

PlumbingGraph parse_graph(const std::string& text);
std::string emit_graph(const PlumbingGraph& g);

MoveSequence parse_moves(const std::string& text);
std::string emit_moves(const MoveSequence& seq);

Divisor parse_divisor(const std::string& text);
std::string emit_divisor(const Divisor& d);

Embedding parse_embedding(const std::string& text);
std::string emit_embedding(const Embedding& phi);

Factorization parse_factorization(const std::string& text);
std::string emit_factorization(const Factorization& f);

// Whole-file convenience used by the command-line tool and the tests.
// Throws std::runtime_error when the file cannot be read.
std::string read_file(const std::string& path);

}  // namespace plumb
