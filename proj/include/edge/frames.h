// include/edge/frames.h

// Copyright 2026  The edge-dialogue authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDGE_FRAMES_H_
#define EDGE_FRAMES_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace edge {

/// A semantic-frame label such as FOOD, DESIRING or an augmented token
/// (WHY, YES, ?). FrameNet labels are stored uppercase; "?" keeps its form.
class Frame {
 public:
  Frame() = default;
  /// Canonicalizes to uppercase. Throws edge::Error on an empty label.
  explicit Frame(std::string_view label);

  const std::string &label() const { return label_; }

  auto operator<=>(const Frame &) const = default;

 private:
  std::string label_;
};

/// Ordered frames evoked by an utterance, left to right.
struct FrameSequence {
  std::vector<Frame> frames;
  std::optional<std::string> source_text;

  std::size_t size() const { return frames.size(); }
  bool empty() const { return frames.empty(); }
  std::vector<std::string> labels() const;
  std::set<std::string> label_set() const;

  static FrameSequence from_labels(const std::vector<std::string> &labels);
};

/// Where a frame came from in the source text.
struct FrameMention {
  Frame frame;
  std::size_t token_begin = 0;  ///< first token of the trigger span
  std::size_t token_end = 0;    ///< one past the last token
  std::size_t char_offset = 0;  ///< byte offset of the first token
};

/// Categories of augmented (non-FrameNet) tokens.
enum class AugmentedKind { kWhWord, kPolarity, kQuestionMark, kPronoun };

class FrameLexicon {
 public:
  /// Lexicon with the default augmented set and no entries.
  FrameLexicon();

  /// Adds `frame` to the entry for `lexical_unit` (whitespace-separated
  /// words; matched after tokenization). Duplicate rows merge; order of
  /// first appearance is kept.
  void add(std::string_view lexical_unit, std::string_view frame);

  /// Frames for a tokenized lexical unit key ("meet up"), or nullptr.
  const std::vector<Frame> *find(const std::string &key) const;

  const std::map<std::string, std::vector<Frame>> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t max_unit_words() const { return max_words_; }

  /// Augmented surface token ("why", "?", "i") -> its kind.
  const std::map<std::string, AugmentedKind> &augmented() const { return augmented_; }
  std::optional<AugmentedKind> augmented_kind(const std::string &token) const;

 private:
  std::map<std::string, std::vector<Frame>> entries_;
  std::map<std::string, AugmentedKind> augmented_;
  std::size_t max_words_ = 0;
};

/// Reads `lexical_unit<TAB>FRAME_LABEL` rows; '#' lines and blank lines are
/// skipped. Throws ParseError on a row without exactly two columns or on a
/// file with no entries.
FrameLexicon load_lexicon(const std::string &path);
FrameLexicon parse_lexicon(std::string_view content, const std::string &name = "<memory>");

/// Every label extract_frames can emit: lexicon frames plus augmented tokens.
std::set<std::string> frame_vocabulary(const FrameLexicon &lexicon);

struct TaggerOptions {
  /// Emit pronoun tokens (I, YOU, ...) as frames. They are always part of
  /// the frame vocabulary; emission is off by default.
  bool emit_pronouns = false;
};

/// Frame-extraction backend. Implementations must be pure and thread-safe.
class FrameExtractor {
 public:
  virtual ~FrameExtractor() = default;
  virtual FrameSequence extract(std::string_view text) const = 0;
};

/// Deterministic lexicon tagger, the default backend.
class LexiconFrameTagger : public FrameExtractor {
 public:
  explicit LexiconFrameTagger(const FrameLexicon &lexicon, TaggerOptions options = {})
      : lexicon_(&lexicon), options_(options) {}

  FrameSequence extract(std::string_view text) const override;
  std::vector<FrameMention> tag(std::string_view text) const;

 private:
  const FrameLexicon *lexicon_;
  TaggerOptions options_;
};

FrameSequence extract_frames(std::string_view text, const FrameLexicon &lexicon,
                             TaggerOptions options = {});

}  // namespace edge

#endif  // EDGE_FRAMES_H_
