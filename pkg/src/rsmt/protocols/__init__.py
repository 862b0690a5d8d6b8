from .base import Protocol, ProtocolError
from .ciss import (
    P1,
    P2,
    P3,
    ChannelPayload,
    CissProtocol,
    ciss_receiver_decode,
    ciss_sender_encode,
    mismatch_lists,
)
from .rss import RssProtocol, rss_receive, rss_send
from .sjst import (
    SjstProtocol,
    sjst_finalize_receiver,
    sjst_round1_sender,
    sjst_round2_receiver,
    sjst_round3_sender,
)
from .strawman import StrawmanProtocol, strawman_receive, strawman_send

__all__ = [
    "Protocol",
    "ProtocolError",
    "P1",
    "P2",
    "P3",
    "ChannelPayload",
    "CissProtocol",
    "ciss_receiver_decode",
    "ciss_sender_encode",
    "mismatch_lists",
    "RssProtocol",
    "rss_receive",
    "rss_send",
    "SjstProtocol",
    "sjst_finalize_receiver",
    "sjst_round1_sender",
    "sjst_round2_receiver",
    "sjst_round3_sender",
    "StrawmanProtocol",
    "strawman_receive",
    "strawman_send",
]
