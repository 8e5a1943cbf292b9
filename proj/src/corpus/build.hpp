#pragma once

#include <vector>

#include "common/diagnostics.hpp"
#include "corpus/event.hpp"
#include "corpus/snapshot.hpp"

namespace tscdn {

// Groups messages by (channel, message id) into version chains.
//
// Snapshots are replayed in (crawl_time, archive_id) order. The first
// observation of a message opens its chain at the message's own date; a later
// crawl that sees different (text, media multiset) appends a version stamped
// with that crawl time. Identical content never produces a new version.
// Messages without a valid date are excluded and counted.
Corpus build_corpus(const std::vector<Snapshot>& snapshots, Diagnostics& diag);

}  // namespace tscdn
