import csv
import io

from rest_framework.renderers import BaseRenderer


class MomentTableCSVRenderer(BaseRenderer):
    """Serialized moment tables as ``k,value,route`` rows."""

    media_type = 'text/csv'
    format = 'csv'
    charset = 'utf-8'
    header = ('k', 'value', 'route')

    def render(self, data, accepted_media_type=None, renderer_context=None):
        digits = (renderer_context or {}).get('digits', 17)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(self.header)
        for k, (value, route) in enumerate(zip(data['values'], data['route'])):
            writer.writerow((k, 'nan' if value is None else f'{value:.{digits}g}', route))
        return buffer.getvalue().encode(self.charset)
