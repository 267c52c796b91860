#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "saga/abstract_code.hpp"

namespace saga::render {

// ---------------------------------------------------------------------------
// Layout

/// One output line. A line with `fill_width` set is padded with `-` so that the
/// indented text ends just before column `fill_width`.
struct Line {
    int indent = 0;
    std::string text;
    int fill_width = 0;
};

using Doc = std::vector<Line>;

inline constexpr int kIndentWidth = 4;

Doc text(std::string line);
Doc banner(std::string line, int width);
Doc blank();
Doc nest(int levels, Doc doc);
Doc vcat(std::vector<Doc> docs);
/// Concatenates the non-empty docs with one blank line between each pair.
Doc vsep(std::vector<Doc> docs);

std::string indent(int level);
/// Blank lines keep the enclosing indentation, matching the generator's historic output.
std::string layout(const Doc& doc);

// ---------------------------------------------------------------------------
// Configuration

enum class Dialect { Java, CSharp, Cxx };

std::string to_string(Dialect d);
std::optional<Dialect> parse_dialect(std::string_view name);

struct OutputFile {
    std::string path;
    std::string content;

    bool operator==(const OutputFile&) const = default;
};

/// The cxx back end renders the same module twice: once for the header, once for the
/// out-of-class definitions.
enum class FileType { Source, Header };

struct RenderConfig;

// X(name, signature): the complete table of render functions.
#define SAGA_RENDER_ENTRIES(X)                                                                                 \
    X(package, std::vector<OutputFile>(const RenderConfig&, const code::AbstractCode&))                       \
    X(module_file, OutputFile(const RenderConfig&, const code::Package&, const code::CodeModule&))            \
    X(preamble, Doc(const RenderConfig&, const code::Package&, FileType))                                     \
    X(module, Doc(const RenderConfig&, FileType, const code::CodeModule&))                                    \
    X(module_decl, std::string(const RenderConfig&, const code::CodeModule&))                                 \
    X(module_close, std::string(const RenderConfig&))                                                         \
    X(scope, std::string(const RenderConfig&, code::Scope))                                                   \
    X(trans_list, Doc(const RenderConfig&, FileType, const code::CodeModule&))                                \
    X(state_list, Doc(const RenderConfig&, const std::vector<code::StateVar>&))                               \
    X(state_var, std::string(const RenderConfig&, const code::StateVar&))                                     \
    X(transformation, Doc(const RenderConfig&, FileType, const code::CodeModule&, const code::Transformation&)) \
    X(signature, std::string(const RenderConfig&, FileType, const code::CodeModule&, const code::Transformation&)) \
    X(params, std::string(const RenderConfig&, const std::vector<code::Parameter>&))                          \
    X(param, std::string(const RenderConfig&, const code::Parameter&))                                        \
    X(body, Doc(const RenderConfig&, const code::Body&))                                                      \
    X(block, Doc(const RenderConfig&, const code::Block&))                                                    \
    X(statement, Doc(const RenderConfig&, const code::Statement&))                                            \
    X(assign, Doc(const RenderConfig&, const code::Assign&))                                                  \
    X(declaration, Doc(const RenderConfig&, const code::Declaration&))                                        \
    X(var_dec, Doc(const RenderConfig&, const code::VarDec&))                                                 \
    X(list_dec, Doc(const RenderConfig&, const code::ListDec&))                                               \
    X(list_dec_literals, Doc(const RenderConfig&, const code::ListDecLiterals&))                              \
    X(var_dec_def, Doc(const RenderConfig&, const code::VarDecDef&))                                          \
    X(obj_dec_def, Doc(const RenderConfig&, const code::ObjDecDef&))                                          \
    X(conditional, Doc(const RenderConfig&, const code::Conditional&))                                        \
    X(iteration, Doc(const RenderConfig&, const code::Iteration&))                                            \
    X(jump, Doc(const RenderConfig&, code::Jump))                                                             \
    X(return_stmt, Doc(const RenderConfig&, const code::Return&))                                             \
    X(value_stmt, Doc(const RenderConfig&, const code::ValueStatement&))                                      \
    X(comment, Doc(const RenderConfig&, const code::Comment&))                                                \
    X(comment_delimit, Doc(const RenderConfig&, const code::CommentDelimit&))                                 \
    X(value, std::string(const RenderConfig&, const code::Value&))                                            \
    X(var, std::string(const RenderConfig&, const code::Var&))                                                \
    X(literal, std::string(const RenderConfig&, const code::Literal&))                                        \
    X(obj_var, std::string(const RenderConfig&, const code::ObjVar&))                                         \
    X(obj_access, std::string(const RenderConfig&, const code::ObjAccess&))                                   \
    X(method_call, std::string(const RenderConfig&, const code::Value&, const code::MethodCall&))             \
    X(list_op, std::string(const RenderConfig&, const code::Value&, const code::ListOp&))                     \
    X(bin_op, std::string(const RenderConfig&, const code::BinOp&))                                           \
    X(new_obj, std::string(const RenderConfig&, const code::New&))                                            \
    X(call, std::string(const RenderConfig&, const code::Call&))                                              \
    X(list_index, std::string(const RenderConfig&, const code::ListIndex&))                                   \
    X(state_type, std::string(const RenderConfig&, const code::StateType&))                                   \
    X(trans_type, std::string(const RenderConfig&, const code::TransType&))                                   \
    X(object_type, std::string(const RenderConfig&, code::ObjectType))                                        \
    X(base_type, std::string(const RenderConfig&, code::BaseType, bool boxed))                                \
    X(list_type, std::string(const RenderConfig&, const code::StateType& element))                            \
    X(string_literal, std::string(const RenderConfig&, const std::string&))                                   \
    X(member_access, std::string(const RenderConfig&))

/// A dialect: one render function per IR category. Dialects start from the generic
/// table and replace entries; `overrides` records which, with a one-line reason.
struct RenderConfig {
#define SAGA_DECLARE_ENTRY(name, sig) std::function<sig> name;
    SAGA_RENDER_ENTRIES(SAGA_DECLARE_ENTRY)
#undef SAGA_DECLARE_ENTRY

    std::string name;
    /// File extension for one-file-per-module layouts, including the dot.
    std::string extension = ".txt";
    std::map<std::string, std::string> overrides;

    /// Every entry name with whether it is bound.
    std::vector<std::pair<std::string, bool>> entries() const;
    /// Restores one entry from `generic`; returns false for an unknown name.
    bool reset_entry(const std::string& entry, const RenderConfig& generic);
};

const RenderConfig& generic_config();
const RenderConfig& config_for(Dialect d);

/// Renders a validated package. Throws SagaError(UnmappableType) when a type has no
/// spelling in the dialect.
std::vector<OutputFile> render_package(const RenderConfig& config, const code::AbstractCode& code);
std::vector<OutputFile> render_package(Dialect d, const code::AbstractCode& code);

std::string type_map(Dialect d, const code::StateType& t);
std::string type_map(Dialect d, const code::TransType& t);

} // namespace saga::render
