from talktime.model import Conversation, Utterance


def conv(id="c", *spans, duration=None, parties=None, party_of=None):
    """Build a conversation from ``(speaker, start, end)`` triples."""
    return Conversation.build(
        id,
        [Utterance(s, float(a), float(b)) for s, a, b in spans],
        duration=duration,
        parties=parties,
        party_of=party_of,
    )
