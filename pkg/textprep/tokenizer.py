import re
import unicodedata

MENTION = re.compile(r'^[^\w#]*@\w')


def _is_edge_char(char):
    return unicodedata.category(char)[0] in ('P', 'S')


def strip_edges(token):
    start, end = 0, len(token)
    while start < end and _is_edge_char(token[start]):
        start += 1
    while end > start and _is_edge_char(token[end - 1]):
        end -= 1
    return token[start:end]


def is_url(token):
    return '://' in token or token.lower().startswith('www.')


def tokenize(text):
    # URLs e @menções saem; o corpo das hashtags fica.
    tokens = []
    for piece in text.split():
        if is_url(piece) or MENTION.match(piece):
            continue
        for part in piece.split('#'):
            token = strip_edges(part).lower()
            if token and '@' not in token:
                tokens.append(token)
    return tokens
